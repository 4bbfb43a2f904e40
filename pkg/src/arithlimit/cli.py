"""Command line interface.

    arithlimit <command> --config PATH [--max-word-length L] [--iterations N]
               [--maxpow P] [--out DIR] [--cache DIR]

Exit status: 0 success, 2 configuration error, 3 computation error,
4 verification failure.  Errors are also reported as one JSON object on
stderr.
"""

import argparse
import csv
import io
import json
import os
import sys

from . import __version__
from . import cache as cachemod
from .config import config_hash, load_config
from .errors import (ArithLimitError, DetNotOne, NormNotOne, NotIntegral, NotIrreducible,
                     NotTotallyReal, ParseError, RamifiedPlace, UnsupportedDegree)
from .isometry import Kind, TupleKind, classify_element, direction_from_class, \
    find_schottky_powers, fixed_points, finite_order_bound
from .limitsets import (SampleMode, discreteness_report, enumerate_elements,
                        exact_float_agreement, mixed_upgrade_search, orbit_boundary_estimate,
                        phi_conjugate_audit, predict_structure, product_structure_check,
                        require_hyperbolic, sample_furstenberg, sample_projective,
                        trace_field_profile)
from .numfield import format_element
from .render import render_svg

EXIT_OK, EXIT_CONFIG, EXIT_COMPUTE, EXIT_VERIFY = 0, 2, 3, 4
CONFIG_ERRORS = (ParseError, DetNotOne, NotIntegral, NormNotOne, NotIrreducible,
                 NotTotallyReal, UnsupportedDegree, RamifiedPlace)
MIXED_UPGRADE_BOUND = 200
COMMANDS = ("classify", "enumerate", "plimit", "flimit", "tracefield", "discreteness",
            "predict", "verify", "render")


def fmt_float(x):
    """12 significant digits."""
    return f"{x:.12g}"


def build_parser():
    p = argparse.ArgumentParser(prog="arithlimit", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=f"arithlimit {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--config", required=True, help="configuration file")
        s.add_argument("--max-word-length", type=int, default=8, dest="L")
        s.add_argument("--iterations", type=int, default=20, dest="N")
        s.add_argument("--maxpow", type=int, default=5)
        s.add_argument("--out", default=None, help="output directory")
        s.add_argument("--cache", default=None, help="cache directory")
        if name in ("plimit", "render"):
            s.add_argument("--limit-cone", action="store_true",
                           help="include mixed tuples (limit cone)")
    return p


class Run:
    def __init__(self, args):
        self.args = args
        self.cfgfile = load_config(args.config)
        self.cfg = self.cfgfile.group
        self.hash = config_hash(self.cfgfile)
        self.cache_dir = os.environ.get(cachemod.CACHE_ENV) or args.cache
        self._elements = {}

    def elements(self, L=None):
        L = self.args.L if L is None else L
        if L not in self._elements:
            E = None
            if self.cache_dir:
                E = cachemod.read_cache(self.cfg, self.hash, L, self.cache_dir)
            if E is None:
                E = enumerate_elements(self.cfg, L)
                if self.cache_dir:
                    cachemod.write_cache(E, self.hash, self.cache_dir)
            self._elements[L] = E
        return self._elements[L]

    def emit(self, name, text):
        if self.args.out:
            os.makedirs(self.args.out, exist_ok=True)
            path = os.path.join(self.args.out, name)
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
            m = cachemod.manifest(self.hash, self.args.command, L=self.args.L,
                                  N=self.args.N, maxpow=self.args.maxpow)
            with open(os.path.join(self.args.out, "manifest.json"), "w", encoding="utf-8") as fh:
                json.dump(m, fh, sort_keys=True, indent=2)
                fh.write("\n")
        else:
            sys.stdout.write(text)


def _csv(rows, header):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def plimit_csv(D, r):
    header = ["theta"] + [f"w{j}" for j in range(1, r + 1)] + ["word"]
    rows = []
    for d, word in D.points:
        w = d.coords
        theta = w[1] / (w[0] + w[1])
        rows.append([fmt_float(theta)] + [fmt_float(x) for x in w] + [word])
    return _csv(rows, header)


def flimit_csv(F, r):
    header = [f"alpha{j}" for j in range(1, r + 1)] + ["word"]
    rows = [[fmt_float(b.alpha) for b in xi] + [word] for xi, word in F.points]
    return _csv(rows, header)


# --- commands ----------------------------------------------------------------

def cmd_classify(run):
    cfg = run.cfg
    bound = finite_order_bound(cfg.field.degree)
    lines = []
    for lab, g in zip(cfg.labels, cfg.generators):
        tc = classify_element(g, cfg.r, bound)
        T = g.trace()
        traces = ", ".join(fmt_float(abs(T.to_float(j))) for j in range(1, cfg.r + 1))
        lines.append(f"{lab}\t{tc}\ttrace {format_element(T)}\t|trace| at places: {traces}")
    run.emit("classify.txt", "\n".join(lines) + "\n")


def cmd_enumerate(run):
    if not run.cache_dir:
        run.cache_dir = ".limitset-cache"
    E = run.elements()
    path = cachemod.cache_path(run.cache_dir, run.hash, E.max_word_length)
    if not os.path.exists(path):
        cachemod.write_cache(E, run.hash, run.cache_dir)
    print(f"{len(E)} elements with word length <= {E.max_word_length}; cache {path}")


def cmd_plimit(run):
    mode = SampleMode.LIMIT_CONE if run.args.limit_cone else SampleMode.PROJECTIVE_LIMIT
    D = sample_projective(run.elements(), mode)
    run.emit("plimit.csv", plimit_csv(D, run.cfg.r))


def cmd_flimit(run):
    F = sample_furstenberg(run.elements())
    run.emit("flimit.csv", flimit_csv(F, run.cfg.r))


def _profile(run):
    return trace_field_profile(run.cfg, run.cfgfile.ambient)


def cmd_tracefield(run):
    p = _profile(run)
    lines = [f"degree {p.degree}", f"ambient_degree {p.ambient_degree}", f"k {p.k}",
             "per_place_degree " + " ".join(map(str, p.per_place_degree)),
             "per_place_k " + " ".join(map(str, p.per_place_k)),
             "blocks " + " ".join("(" + ",".join(map(str, b)) + ")" for b in p.blocks)]
    run.emit("tracefield.txt", "\n".join(lines) + "\n")


def _report_lines(rep):
    return [f"place {ps.place}\t{ps.status.value}\t{ps.evidence}" for ps in rep.places]


def cmd_discreteness(run):
    rep = discreteness_report(run.cfg, run.elements())
    run.emit("discreteness.txt", "\n".join(_report_lines(rep)) + "\n")


def cmd_predict(run):
    p = _profile(run)
    rep = discreteness_report(run.cfg, run.elements())
    s = predict_structure(run.cfg, p, rep)
    m = str(s.m_min) if s.m_min == s.m_max else f"{s.m_min}..{s.m_max}"
    lines = [f"m {m}", f"k {s.k}", f"dim_P {s.predicted_dim_P}", f"F {s.predicted_F}",
             "zariski_blocks " + " ".join("(" + ",".join(map(str, b)) + ")"
                                          for b in s.zariski_blocks)]
    run.emit("predict.txt", "\n".join(lines) + "\n")


def cmd_render(run):
    E = run.elements()
    mode = SampleMode.LIMIT_CONE if run.args.limit_cone else SampleMode.PROJECTIVE_LIMIT
    svg = render_svg(sample_furstenberg(E), sample_projective(E, mode),
                     title=os.path.basename(run.args.config))
    run.emit("render.svg", svg)


def verify_checks(run):
    """(name, ok, detail) for every invariant checked on the config."""
    cfg = run.cfg
    out = []

    def check(name, fn):
        try:
            ok, detail = fn()
        except ArithLimitError as exc:
            ok, detail = False, f"{exc.code}: {exc}"
        out.append((name, ok, detail))

    check("nonelementarity precheck",
          lambda: (True, f"hyperbolic tuple {require_hyperbolic(cfg, min(6, run.args.L))}"))
    E = run.elements()

    def audit():
        bad = phi_conjugate_audit(E)
        return not bad, f"{len(bad)} violations over {len(E)} elements"
    check("conjugate-type audit", audit)

    def agreement():
        bad = exact_float_agreement(E)
        return not bad, f"{len(bad)} disagreements"
    check("exact/float classification agreement", agreement)

    def inverses():
        missing = [E.word_str(rec) for rec in E if rec.element.inverse().key not in E.records]
        return not missing, f"{len(missing)} missing inverses"
    check("inverse closure", inverses)

    def invariance():
        hyp = [rec for rec in E if rec.tclass.kind is TupleKind.HYPERBOLIC][:30]
        conj = [rec.element for rec in E][:12]
        bad = 0
        bound = finite_order_bound(cfg.field.degree)
        for rec in hyp:
            d = direction_from_class(rec.tclass)
            g = rec.element
            if direction_from_class(classify_element(g * g * g, cfg.r, bound)) != d:
                bad += 1
            for w in conj:
                if direction_from_class(classify_element(w * g * w.inverse(), cfg.r, bound)) != d:
                    bad += 1
        return bad == 0, f"{bad} direction mismatches over {len(hyp)} tuples"
    check("translation direction invariance", invariance)

    def orbit():
        hyp = [rec for rec in E if rec.tclass.kind is TupleKind.HYPERBOLIC][:5]
        worst = 0.0
        for rec in hyp:
            h = cfg.star(rec.element)
            xi, d = orbit_boundary_estimate(h, N=run.args.N)
            ref = direction_from_class(rec.tclass)
            worst = max([worst] + [abs(a - b) for a, b in zip(d.coords, ref.coords)])
            for j, comp in enumerate(h.components):
                att = fixed_points(comp)[0]
                worst = max(worst, abs(att.u * xi[j].v - att.v * xi[j].u))
        return worst < 1e-6, f"max deviation {worst:.3g}"
    check("orbit/boundary consistency", orbit)

    state = {}

    def structure():
        p = _profile(run)
        rep = discreteness_report(cfg, E)
        s = predict_structure(cfg, p, rep)
        state.update(profile=p, report=rep)
        ok = all(dim_f <= 1 + s.predicted_dim_P for _, _, dim_f in s.candidates)
        return ok, f"k = {s.k}, dim P = {s.predicted_dim_P}, F = {s.predicted_F}"
    check("structure prediction coherence", structure)

    if cfg.r == 2 and state.get("profile") is not None and state["profile"].k == 2:
        def locked():
            F = sample_furstenberg(E)
            diag = product_structure_check(F, state["report"], 2)
            return diag.max_alpha_gap == 0, f"max |alpha1 - alpha2| = {diag.max_alpha_gap}"
        check("conjugate-locked Furstenberg sample", locked)

    def cache_roundtrip():
        text = cachemod.dumps(E, run.hash)
        E2 = cachemod.loads(text, cfg, run.hash, classify=False)
        same = list(E.records) == list(E2.records) and cachemod.dumps(E2, run.hash) == text
        return same, f"{len(E)} records"
    check("cache round trip", cache_roundtrip)

    mixed = [g for g in cfg.generators if _mixed_pattern(classify_element(g, cfg.r))]
    hyp = next((rec.element for rec in E if rec.tclass.kind is TupleKind.HYPERBOLIC), None)
    if mixed and hyp is not None:
        def upgrade():
            g = mixed[0]
            kk = _mixed_pattern(classify_element(g, cfg.r))
            res = mixed_upgrade_search(cfg.star(g), cfg.star(hyp), kk, MIXED_UPGRADE_BOUND)
            per = [c.kind for c in classify_element(res.element, cfg.r).per_component]
            ok = all(k is Kind.HYPERBOLIC for k in per[:kk]) and (kk == cfg.r or per[kk].is_elliptic)
            return ok, f"m = {res.m}"
        check("mixed upgrade", upgrade)

    hyp_gens = [g for g in cfg.generators
                if classify_element(g, cfg.r).per_component[0].kind is Kind.HYPERBOLIC]
    if len(hyp_gens) >= 2:
        def schottky():
            a, b = hyp_gens[0].at_place(1), hyp_gens[1].at_place(1)
            try:
                sp = find_schottky_powers(a, b, run.args.maxpow)
            except ArithLimitError as exc:
                return True, f"no certificate ({exc.code}); informational"
            return True, f"powers ({sp.m}, {sp.n}) certified at place 1"
        check("Schottky search", schottky)
    return out


def _mixed_pattern(tc):
    """kk such that components 1..kk-1 are hyperbolic and kk..r elliptic of infinite order."""
    kinds = [c.kind for c in tc.per_component]
    kk = next((i for i, k in enumerate(kinds) if k is not Kind.HYPERBOLIC), None)
    if kk is None or kk == 0:
        return None
    if all(k is Kind.ELLIPTIC_INFINITE for k in kinds[kk:]):
        return kk + 1
    return None


def cmd_verify(run):
    results = verify_checks(run)
    lines = [f"{'PASS' if ok else 'FAIL'}\t{name}\t{detail}" for name, ok, detail in results]
    run.emit("verify.txt", "\n".join(lines) + "\n")
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_VERIFY


HANDLERS = {
    "classify": cmd_classify, "enumerate": cmd_enumerate, "plimit": cmd_plimit,
    "flimit": cmd_flimit, "tracefield": cmd_tracefield, "discreteness": cmd_discreteness,
    "predict": cmd_predict, "verify": cmd_verify, "render": cmd_render,
}


def _error(code, message, status):
    sys.stderr.write(json.dumps({"error": code, "message": message, "exit": status}) + "\n")
    return status


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.L < 1:
        return _error("InvalidArgument", "--max-word-length must be at least 1", EXIT_CONFIG)
    try:
        run = Run(args)
    except CONFIG_ERRORS as exc:
        return _error(exc.code, str(exc), EXIT_CONFIG)
    except OSError as exc:
        return _error("ConfigUnreadable", str(exc), EXIT_CONFIG)
    except ArithLimitError as exc:
        return _error(exc.code, str(exc), EXIT_CONFIG)
    try:
        status = HANDLERS[args.command](run)
    except ArithLimitError as exc:
        return _error(exc.code, str(exc), EXIT_COMPUTE)
    return status or EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
