"""On-disk element cache and run manifests.

A cache file stores an enumerated element set exactly::

    arithlimit-cache 1
    manifest <sha256 of the manifest>
    config <config hash>
    L <max word length>
    count <number of records>
    <word>\t<entry>\t<entry>\t<entry>\t<entry>

Each entry is a field element in power-basis coordinates written
``n0 n1 ... / den``.  Records follow enumeration order, so a file written
twice from the same manifest is byte-identical.
"""

import hashlib
import json
import os

from . import __version__, numfield
from .errors import ArithLimitError
from .isometry import ExactMobius
from .limitsets import ElementRecord, ElementSet, classify_records, parse_word
from .quatalg import Quaternion

CACHE_ENV = "LIMITSET_CACHE"


class CacheMismatch(ArithLimitError):
    pass


def manifest(config_hash, command, **params):
    return {"config": config_hash, "command": command,
            "params": {k: params[k] for k in sorted(params)}, "version": __version__}


def manifest_hash(m):
    return hashlib.sha256(json.dumps(m, sort_keys=True).encode()).hexdigest()


def cache_path(directory, config_hash, L):
    return os.path.join(directory, f"{config_hash[:16]}_L{L}.cache")


def _fmt(v):
    return " ".join(str(c) for c in v.nums) + f" / {v.den}"


def _parse(K, text):
    nums, den = text.split("/")
    vals = [int(x) for x in nums.split()]
    return K.element([numfield.Fraction(x, int(den)) for x in vals])


def dumps(E, config_hash):
    m = manifest(config_hash, "enumerate", L=E.max_word_length)
    lines = ["arithlimit-cache 1", f"manifest {manifest_hash(m)}", f"config {config_hash}",
             f"L {E.max_word_length}", f"count {len(E)}"]
    for rec in E:
        lines.append("\t".join([E.word_str(rec)] + [_fmt(v) for v in rec.element.entries()]))
    return "\n".join(lines) + "\n"


def write_cache(E, config_hash, directory):
    os.makedirs(directory, exist_ok=True)
    path = cache_path(directory, config_hash, E.max_word_length)
    data = dumps(E, config_hash).encode()
    tmp = path + ".tmp"
    with open(tmp, "wb") as fh:
        fh.write(data)
    os.replace(tmp, path)
    return path


def loads(text, cfg, config_hash, classify=True):
    lines = text.splitlines()
    if not lines or lines[0] != "arithlimit-cache 1":
        raise CacheMismatch("not a cache file")
    head = dict(line.split(" ", 1) for line in lines[1:5])
    L = int(head["L"])
    expect = manifest_hash(manifest(config_hash, "enumerate", L=L))
    if head["config"] != config_hash or head["manifest"] != expect:
        raise CacheMismatch("cache was written for a different manifest")
    K = cfg.field
    records = {}
    for line in lines[5:]:
        parts = line.split("\t")
        word = parse_word(parts[0], cfg.labels)
        vals = [_parse(K, p) for p in parts[1:]]
        if cfg.algebra is not None:
            g = Quaternion(cfg.algebra, *vals)
        else:
            g = ExactMobius(*vals, check=False)
        records[g.key] = ElementRecord(g, word)
    if len(records) != int(head["count"]):
        raise CacheMismatch("record count does not match the header")
    E = ElementSet(cfg, L, records)
    if classify:
        classify_records(E)
    return E


def read_cache(cfg, config_hash, L, directory, classify=True):
    """Cached element set or ``None`` when no cache file exists."""
    path = cache_path(directory, config_hash, L)
    if not os.path.exists(path):
        return None
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), cfg, config_hash, classify)
