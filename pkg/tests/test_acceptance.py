"""Acceptance criteria, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL ...`` line.  The module
can also be run directly (``python tests/test_acceptance.py``) to print the
ten lines without pytest.
"""

import math
import os
import random
import subprocess
import sys
import time
from fractions import Fraction
from itertools import product

import pytest

if __name__ == "__main__":
    sys.path.insert(0, os.path.dirname(__file__))

from arithlimit import cli
from arithlimit.config import load_config
from arithlimit.isometry import (ExactMobius, Kind, TupleKind, classify, classify_float,
                                 classify_tuple, fixed_points, find_schottky_powers,
                                 star_embedding, translation_direction)
from arithlimit.limitsets import (GroupConfig, Status, discreteness_report, enumerate_elements,
                                  exact_float_agreement, hull_progression, jorgensen_quantity,
                                  mixed_upgrade_search, orbit_boundary_estimate,
                                  phi_conjugate_audit, predict_structure, reduced_words,
                                  sample_furstenberg, sample_projective, trace_field_profile)
from arithlimit.numfield import make_field

from conftest import CONFIG_NAMES, cfg_path, elements

Q2 = make_field("x^2 - 2")


def _report(capsys, number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    return ok


def _sq2(c):
    return Q2(c)


# --- 1 ---------------------------------------------------------------------

def criterion_1():
    start = time.perf_counter()
    c = load_config(cfg_path("rational_diagonal"))
    E = elements("rational_diagonal", 8)
    D = sample_projective(E)
    dirs = sorted({d.coords for d, _ in D.points})
    prof = trace_field_profile(c.group, c.ambient)
    pred = predict_structure(c.group, prof, discreteness_report(c.group, E))
    F = sample_furstenberg(E)
    locked = all(xi[0].alpha == xi[1].alpha and xi[0] == xi[1] for xi, _ in F.points)
    elapsed = time.perf_counter() - start
    ok = (dirs == [(0.5, 0.5)] and prof.k == 2 and pred.predicted_dim_P == 0
          and pred.predicted_dim_P == c.group.r // prof.k - 1 and len(F) > 0 and locked
          and elapsed < 60)
    return ok, (f"directions {dirs}, k = {prof.k}, dim P = {pred.predicted_dim_P}, "
                f"{len(F)} F-tuples locked = {locked}, {elapsed:.1f} s")


# --- 2 ---------------------------------------------------------------------

def criterion_2():
    c = load_config(cfg_path("generic_sqrt2"))
    prof = trace_field_profile(c.group, c.ambient)
    E = elements("generic_sqrt2", 10)
    prog = dict(hull_progression(E, range(6, 11)))
    lengths = [prog[L].length for L in range(6, 11)]
    gaps = [prog[L].max_gap for L in range(8, 11)]
    ok = (prof.k == 1 and lengths[0] > 0
          and all(b >= a for a, b in zip(lengths, lengths[1:]))
          and all(b <= a for a, b in zip(gaps, gaps[1:])))
    return ok, (f"k = {prof.k}, hull lengths L=6..10 "
                f"{[round(v, 6) for v in lengths]}, gaps L=8..10 {[round(v, 6) for v in gaps]}")


# --- 3 ---------------------------------------------------------------------

def criterion_3():
    start = time.perf_counter()
    c = load_config(cfg_path("mixed"))
    M = c.group.generators[c.group.labels.index("M")]
    K = c.field
    t = K.gen
    tc = classify_tuple(star_embedding(M, 2))
    traces_ok = M.trace() in (2 + t, -2 - t)
    kinds = [x.kind for x in tc.per_component]
    E = elements("mixed", 8)
    rep = discreteness_report(c.group, E)
    bad = phi_conjugate_audit(E)
    elapsed = time.perf_counter() - start
    ok = (tc.kind is TupleKind.MIXED and kinds == [Kind.HYPERBOLIC, Kind.ELLIPTIC_INFINITE]
          and traces_ok and rep.status(2) is Status.NONDISCRETE
          and rep.places[1].evidence.startswith("EllipticInfinite") and not bad
          and elapsed < 60)
    return ok, (f"{tc}; place 2 {rep.status(2).value} ({rep.places[1].evidence}); "
                f"audit violations {len(bad)} over {len(E)} elements, {elapsed:.1f} s")


# --- 4 ---------------------------------------------------------------------

def criterion_4():
    E = elements("generic_sqrt2", 6)
    rng = random.Random(2024)
    hyp = [rec for rec in E if rec.tclass.kind is TupleKind.HYPERBOLIC]
    allrecs = list(E)
    bad = 0
    for _ in range(100):
        g = rng.choice(hyp).element
        w = rng.choice(allrecs).element
        m = rng.randint(2, 5)
        d = translation_direction(star_embedding(g, 2))
        if translation_direction(star_embedding(w * g * w.inverse(), 2)) != d:
            bad += 1
        if translation_direction(star_embedding(g ** m, 2)) != d:
            bad += 1
    return bad == 0, f"{bad} inexact directions over 100 (g, w, m) triples"


# --- 5 ---------------------------------------------------------------------

def criterion_5():
    E = elements("generic_sqrt2", 6)
    rng = random.Random(5)
    hyp = [rec for rec in E if rec.tclass.kind is TupleKind.HYPERBOLIC]
    worst_d = worst_x = 0.0
    for rec in rng.sample(hyp, 20):
        h = star_embedding(rec.element, 2)
        xis, d = orbit_boundary_estimate(h, N=20)
        ref = translation_direction(h)
        worst_d = max([worst_d] + [abs(a - b) for a, b in zip(d.coords, ref.coords)])
        for x, comp in zip(xis, h.components):
            att = fixed_points(comp)[0]
            worst_x = max(worst_x, abs(x.u * att.v - x.v * att.u))
    ok = worst_d < 1e-6 and worst_x < 1e-6
    return ok, f"max direction error {worst_d:.2e}, max boundary error {worst_x:.2e}"


# --- 6 ---------------------------------------------------------------------

def criterion_6():
    g = ExactMobius.from_rows([[1, 1], [0, 1]], Q2)
    cs = [Fraction(1, 4), Fraction(1, 2), Fraction(-1, 3), Fraction(2), Fraction(-3, 7),
          Fraction(5, 6), Fraction(-1), Fraction(9, 4), Fraction(1, 10), Fraction(-7, 5)]
    bad = []
    for c in cs:
        h = ExactMobius(Q2.one, Q2.zero, Q2(c), Q2.one)
        # oracle: tr(g)^2 - 4 = 0 and tr[g, h] = 2 + c^2
        if jorgensen_quantity(g, h) != Q2(abs(c * c)):
            bad.append(c)
    h = ExactMobius(Q2.one, Q2.zero, Q2(Fraction(1, 4)), Q2.one)
    cfg = GroupConfig(Q2, 2, (g, h), check=False)
    rep = discreteness_report(cfg, enumerate_elements(cfg, 4))
    ok = not bad and rep.status(1) is Status.NONDISCRETE
    return ok, f"{len(cs) - len(bad)}/{len(cs)} exact quantities; c = 1/4 -> {rep.status(1).value}"


# --- 7 ---------------------------------------------------------------------

def criterion_7():
    G1 = ExactMobius.from_rows([[2, 1], [1, 1]], Q2)
    G2 = ExactMobius.from_rows([[1, 1], [1, 2]], Q2)
    sp = find_schottky_powers(G1.at_place(1), G2.at_place(1), 5)
    a, b = G1 ** sp.m, G2 ** sp.n
    letters = [a, a.inverse(), b, b.inverse()]
    words = [w for w in reduced_words(2, 6) if w]
    bad = 0
    for w in words:
        x = letters[w[0]]
        for li in w[1:]:
            x = x * letters[li]
        if classify(x).kind is not Kind.HYPERBOLIC:
            bad += 1
    return bad == 0, (f"powers ({sp.m}, {sp.n}); {len(words) - bad}/{len(words)} "
                      f"reduced words of length <= 6 hyperbolic")


# --- 8 ---------------------------------------------------------------------

def criterion_8():
    c = load_config(cfg_path("mixed"))
    labels = c.group.labels
    M = c.group.generators[labels.index("M")]
    E = c.group.generators[labels.index("E")]
    up = mixed_upgrade_search(star_embedding(M, 2), star_embedding(E, 2), 2, 200)
    # independent replay: rebuild the element and classify its floating images
    w = M ** up.m * E
    same = w == up.element
    kinds = [classify_float(w.at_place_float(j)).kind for j in (1, 2)]
    ok = same and up.m <= 200 and kinds == [Kind.HYPERBOLIC, Kind.HYPERBOLIC]
    return ok, f"m = {up.m}; replayed M^{up.m}.E components {[k.value for k in kinds]}"


# --- 9 ---------------------------------------------------------------------

def criterion_9():
    counts, bad = [], 0
    for name in CONFIG_NAMES:
        E = elements(name, 8)
        nbad = len(exact_float_agreement(E))
        bad += nbad
        counts.append(f"{name} {len(E)}")
    return bad == 0, f"{bad} disagreements; elements: " + ", ".join(counts)


# --- 10 --------------------------------------------------------------------

def _run_cli(args):
    return subprocess.run([sys.executable, "-m", "arithlimit"] + args,
                          capture_output=True, env={**os.environ, "LIMITSET_CACHE": ""})


def criterion_10(tmp):
    path = str(cfg_path("mixed"))
    outs = []
    for k in (1, 2):
        base = os.path.join(tmp, f"run{k}")
        cache = os.path.join(base, "cache")
        r1 = _run_cli(["enumerate", "--config", path, "--max-word-length", "7",
                       "--cache", cache])
        r2 = _run_cli(["plimit", "--config", path, "--max-word-length", "7",
                       "--cache", cache, "--out", os.path.join(base, "out")])
        if r1.returncode or r2.returncode:
            return False, f"run {k} failed: {r1.stderr!r} {r2.stderr!r}"
        files = {}
        for root, _, names in os.walk(base):
            for n in names:
                p = os.path.join(root, n)
                with open(p, "rb") as fh:
                    files[os.path.relpath(p, base)] = fh.read()
        outs.append(files)
    same = outs[0] == outs[1]
    names = sorted(outs[0])
    return same and len(names) == 3, f"{len(names)} files compared byte for byte: {names}"


# --- pytest entry points ---------------------------------------------------

def test_criterion_1_rational_diagonal(capsys):
    ok, detail = criterion_1()
    assert _report(capsys, 1, ok, detail), detail


def test_criterion_2_generic_hull(capsys):
    ok, detail = criterion_2()
    assert _report(capsys, 2, ok, detail), detail


def test_criterion_3_mixed_generator(capsys):
    ok, detail = criterion_3()
    assert _report(capsys, 3, ok, detail), detail


def test_criterion_4_direction_invariance(capsys):
    ok, detail = criterion_4()
    assert _report(capsys, 4, ok, detail), detail


def test_criterion_5_orbit_consistency(capsys):
    ok, detail = criterion_5()
    assert _report(capsys, 5, ok, detail), detail


def test_criterion_6_jorgensen(capsys):
    ok, detail = criterion_6()
    assert _report(capsys, 6, ok, detail), detail


def test_criterion_7_schottky(capsys):
    ok, detail = criterion_7()
    assert _report(capsys, 7, ok, detail), detail


def test_criterion_8_mixed_upgrade(capsys):
    ok, detail = criterion_8()
    assert _report(capsys, 8, ok, detail), detail


def test_criterion_9_exact_float_agreement(capsys):
    ok, detail = criterion_9()
    assert _report(capsys, 9, ok, detail), detail


def test_criterion_10_determinism(capsys, tmp_path):
    ok, detail = criterion_10(str(tmp_path))
    assert _report(capsys, 10, ok, detail), detail


if __name__ == "__main__":
    import tempfile
    results = []
    for k in range(1, 11):
        fn = globals()[f"criterion_{k}"]
        if k == 10:
            with tempfile.TemporaryDirectory() as tmp:
                ok, detail = fn(tmp)
        else:
            ok, detail = fn()
        results.append(_report(None, k, ok, detail))
    sys.exit(0 if all(results) else 1)
