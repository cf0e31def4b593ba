"""Command-line front end.

Exit codes: 0 success or verified, 1 usage error, 2 verification failed,
3 numerical-integrity error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import analysis, geometry, harmonic
from .errors import HarmconvError
from .harmonic import KernelSpec, parse_angle
from .polynomial import ComplexPolynomial, count_zeros_unit_disk
from .sampling import circle_family, parse_family, ray_family
from .series import order_for_radius

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_INTEGRITY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def truncation_order() -> int:
    raw = os.environ.get("HC_TRUNCATION")
    if raw is None:
        return harmonic.DEFAULT_ORDER
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"HC_TRUNCATION must be an integer, got {raw!r}") from None
    if n < 8:
        raise UsageError("HC_TRUNCATION must be at least 8")
    return n


def _angle(text):
    try:
        return parse_angle(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _kernel(text):
    try:
        return KernelSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _family(kind):
    def convert(text):
        if ":" not in text:
            text = f"{kind}:{text}"
        try:
            fam = parse_family(text)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc))
        if fam[0] != kind:
            raise argparse.ArgumentTypeError(f"expected a {kind} family, got {text!r}")
        return fam
    return convert


def _int_range(text):
    try:
        lo, _, hi = text.partition(":")
        lo, hi = int(lo), int(hi or lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed integer range {text!r}")
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad integer range {text!r}")
    return list(range(lo, hi + 1))


def _float_range(text):
    """``lo:hi:count`` (linspace) or a comma list; angles accept ``pi`` forms."""
    try:
        if ":" in text:
            lo, hi, cnt = text.split(":")
            return [float(v) for v in np.linspace(parse_angle(lo), parse_angle(hi), int(cnt))]
        return [parse_angle(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed range {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-o", "--output", help="write the result here instead of stdout")
    p = _Parser(prog="harmconv", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help):
        return sub.add_parser(name, help=help, parents=[common])

    s = add("shear", help="series of a half-plane shear")
    s.add_argument("--kernel", type=_kernel, required=True,
                   help='"monomial:n=2,theta=pi" or "moebius:b=0.5"')

    c = add("convolve", help="Hadamard product of two half-plane shears")
    c.add_argument("--left", type=_kernel, required=True)
    c.add_argument("--right", type=_kernel, required=True)
    c.add_argument("--renormalize", action="store_true", help="divide by h'(0)")

    d = add("dilatation", help="rational dilatation of f_a * f")
    d.add_argument("--a", type=float, required=True)
    d.add_argument("--kernel", type=_kernel, required=True)
    d.add_argument("--max-scan", action="store_true", help="also scan max modulus on a polar grid")

    z = add("zeros", help="zero location relative to |z| = 1")
    z.add_argument("--poly", required=True, help='coefficients "a0,a1,...,ad" (e.g. "1,0.5-2i,1")')
    z.add_argument("--mode", default="auto", choices=["auto", "schur_cohn", "cohn_chain", "root_oracle"])

    v = add("verify", help="check one statement")
    v.add_argument("statement", choices=["thm22", "thm24", "cor25", "remark22", "example23"])
    v.add_argument("--n", type=int)
    v.add_argument("--a", type=float)
    v.add_argument("--b", type=float)
    v.add_argument("--theta", type=_angle)

    sc = add("scan", help="sweep the f_a * f_n theorem over parameter ranges")
    sc.add_argument("--n-range", type=_int_range, default=_int_range("1:4"))
    sc.add_argument("--a-range", type=_float_range, required=True)
    sc.add_argument("--theta-range", type=_float_range, default=[0.0])

    r = add("render", help="SVG of circle and ray images of f_a * f_n")
    r.add_argument("--a", type=float, required=True)
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--theta", type=_angle, required=True)
    r.add_argument("--circles", type=_family("circles"), default=("circles", 10, 512))
    r.add_argument("--rays", type=_family("rays"), default=("rays", 16, 256))
    r.add_argument("--r-max", type=float, default=0.99)
    r.add_argument("--window", type=float, nargs=4, metavar=("XMIN", "YMIN", "XMAX", "YMAX"))
    r.add_argument("--fit", choices=["robust", "full"], default="robust",
                   help="viewBox when --window is absent: central quantiles or every point")
    return p


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.statement} needs --{' --'.join(missing)}")


def _check_a(a, name="a"):
    if not abs(a) < 1:
        raise UsageError(f"--{name} must satisfy |{name}| < 1")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def run(args) -> tuple[int, str]:
    """Execute a parsed command; returns ``(exit_code, text)``."""
    cmd = args.command
    if cmd == "shear":
        fmap = harmonic.shear_half_plane(args.kernel, truncation_order())
        return EXIT_OK, _dump(fmap.to_dict())
    if cmd == "convolve":
        order = truncation_order()
        fmap = harmonic.convolve(harmonic.shear_half_plane(args.left, order),
                                 harmonic.shear_half_plane(args.right, order))
        if args.renormalize:
            fmap = fmap.renormalized()
        return EXIT_OK, _dump(fmap.to_dict())
    if cmd == "dilatation":
        _check_a(args.a)
        rat = harmonic.dilatation_rational(args.a, args.kernel)
        out = {"a": args.a, "kernel": args.kernel.to_text(), "dilatation": rat.to_dict()}
        if args.max_scan:
            mx, arg, _, _ = analysis.scan_rational(rat)
            out["max_modulus"] = mx
            out["argmax"] = [arg.real, arg.imag]
        return EXIT_OK, _dump(out)
    if cmd == "zeros":
        try:
            poly = ComplexPolynomial.parse(args.poly)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if poly.degree < 1:
            raise UsageError("--poly must have degree >= 1")
        return EXIT_OK, _dump(count_zeros_unit_disk(poly, args.mode).to_dict())
    if cmd == "verify":
        v = _verify(args)
        return (EXIT_OK if v.passed else EXIT_FAIL), _dump(v.to_dict())
    if cmd == "scan":
        for a in args.a_range:
            _check_a(a)
        verdicts = [analysis.verify_theorem22(n, a, th)
                    for n in args.n_range for a in args.a_range for th in args.theta_range]
        ok = all(v.passed for v in verdicts)
        body = {"count": len(verdicts), "passed": sum(v.passed for v in verdicts),
                "verdicts": [v.to_dict() for v in verdicts]}
        return (EXIT_OK if ok else EXIT_FAIL), _dump(body)
    if cmd == "render":
        return EXIT_OK, _render(args)
    raise UsageError(f"unknown command {cmd!r}")


def _verify(args):
    st = args.statement
    if st == "thm22":
        _require(args, "n", "a", "theta")
        _check_a(args.a)
        if args.n < 1:
            raise UsageError("--n must be positive")
        return analysis.verify_theorem22(args.n, args.a, args.theta)
    if st == "remark22":
        _require(args, "n", "theta")
        if args.n < 1:
            raise UsageError("--n must be positive")
        return analysis.remark22_check(args.n, args.theta)
    if st == "thm24":
        _require(args, "a", "b")
        _check_a(args.a)
        _check_a(args.b, "b")
        return analysis.verify_theorem24(args.a, args.b)
    if st == "cor25":
        _require(args, "a")
        _check_a(args.a)
        return analysis.corollary25_check(args.a)
    return analysis.example23_check()


def _render(args) -> str:
    _check_a(args.a)
    if args.n < 1:
        raise UsageError("--n must be positive")
    if not 0 < args.r_max <= 0.999:
        raise UsageError("--r-max must lie in (0, 0.999]")
    order = max(truncation_order(), order_for_radius(args.r_max, growth=2))
    fmap = harmonic.convolve_half_plane_pair(
        args.a, harmonic.shear_half_plane(KernelSpec.monomial(args.n, args.theta), order))
    _, nc, mc = args.circles
    _, nr, mr = args.rays
    curves = [(geometry.sample_image(fmap, c, mc), {"stroke": "#1f3a93"})
              for c in circle_family(nc, args.r_max)]
    curves += [(geometry.sample_image(fmap, r, mr), {"stroke": "#b03a2e"})
               for r in ray_family(nr, args.r_max)]
    if args.window:
        window = tuple(args.window)
    elif args.fit == "robust":
        window = geometry.robust_window(curves)
    else:
        window = None
    return geometry.render_svg(curves, window=window)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        code, text = run(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except HarmconvError as exc:
        print(f"numerical-integrity error: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
