"""Exact number-field arithmetic, isometry tuples and limit-set sampling for
finitely generated subgroups of arithmetic groups acting on products of
hyperbolic planes."""

__version__ = "0.1.0"

from .numfield import NumberField, FieldElement, make_field  # noqa: E402
from .quatalg import QuaternionAlgebra, Quaternion  # noqa: E402
from .isometry import ExactMobius, Mobius, IsometryTuple, star_embedding  # noqa: E402
from .limitsets import GroupConfig, enumerate_elements  # noqa: E402
