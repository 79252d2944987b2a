"""Command-line front end.

Exit codes: 0 success or true, 1 false certificate or failed check,
2 usage or input error.
"""

import argparse
import json
import os
import sys
import tempfile

from .points import (NotGenericError, certified_random_points, change_field,
                     check_sufficiently_general, diff1, diff2, hilbert_eval, ideal_of_points,
                     is_generic_hf, load_points, normalize_convention, partition_info,
                     points_to_json)
from .resolve import betti, complex_from_json, complex_to_json, min_free_resolution
from .scalar import QQ, field_from_spec
from .virtual import (expected_delta2_submatrix, formula_shape, is_virtual, keylemma_check,
                      min_sat_exponent, trim, vres_saturation)

GEN_ATTEMPTS = 20


class InputError(Exception):
    """Bad input file or argument; reported with exit code 2."""


def _write_atomic(path, text):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".virtres-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text, path, out):
    if path:
        _write_atomic(path, text)
    else:
        out.write(text)


def _field(args):
    if args.field is None:
        return None
    try:
        return field_from_spec(args.field)
    except ValueError as exc:
        raise InputError(f"--field: {exc}") from None


def _surrogate_note(field):
    return f"char {field.modulus} surrogate"


def _load(args, err):
    try:
        X = load_points(args.input)
    except OSError as exc:
        raise InputError(f"{args.input}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.input}: invalid JSON ({exc.msg})") from None
    except ValueError as exc:
        raise InputError(f"{args.input}: {exc}") from None
    f = _field(args)
    if f is not None:
        try:
            X = change_field(X, f)
        except ValueError as exc:
            raise InputError(f"{args.input}: {exc}") from None
    if X.field.modulus:
        err.write(f"warning: computing over GF({X.field.modulus}), a {_surrogate_note(X.field)} "
                  "for characteristic 0\n")
    return X


def _annotate(field, doc):
    if field.modulus:
        doc["note"] = _surrogate_note(field)
    return doc


def _grid(M):
    return "".join(" ".join(str(v) for v in row) + "\n" for row in M)


def _text_footer(field):
    return f"# {_surrogate_note(field)}\n" if field.modulus else ""


def _parse_pair(text):
    try:
        a, b = text.split(",")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected i,j but got {text!r}") from None


# ---------------------------------------------------------------------------
# subcommands

def cmd_gen(args, out, err):
    f = _field(args)
    if args.n < 1 or args.bound < args.n:
        raise InputError("need --n >= 1 and --bound >= --n")
    try:
        X = certified_random_points(args.n, args.seed, args.bound, f or QQ, GEN_ATTEMPTS)
    except NotGenericError as exc:
        err.write(f"error: {exc}\n")
        return 1
    doc = _annotate(X.field, points_to_json(X))
    _emit(json.dumps(doc, indent=1) + "\n", args.output, out)
    if X.field.modulus:
        err.write(f"warning: {_surrogate_note(X.field)}\n")
    return 0


def cmd_hilbert(args, out, err):
    X = _load(args, err)
    R = args.rows if args.rows is not None else len(X) + 2
    C = args.cols if args.cols is not None else len(X) + 2
    if R < 1 or C < 1:
        raise InputError("--rows and --cols must be positive")
    H = hilbert_eval(X, R, C)
    M = {0: H, 1: diff1(H), 2: diff2(H)}[args.diff]
    out.write(_grid(M) + _text_footer(X.field))
    return 0


def cmd_betti(args, out, err):
    X = _load(args, err)
    I = ideal_of_points(X)
    if args.sat_a is not None:
        if args.sat_a < 0:
            raise InputError("--sat-a must be non-negative")
        C = vres_saturation(X, args.sat_a, I)
    else:
        C = min_free_resolution(I)
    text = "".join(line + "\n" for line in betti(C).lines())
    out.write(text + _text_footer(X.field))
    return 0


def _complex_doc(C, cert, field, extra=None):
    doc = complex_to_json(C)
    doc["certificate"] = cert.to_json()
    if extra:
        doc.update(extra)
    return _annotate(field, doc)


def cmd_vres_trim(args, out, err):
    X = _load(args, err)
    I = ideal_of_points(X)
    try:
        C = trim(min_free_resolution(I), args.at, X)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    cert = is_virtual(C, I, assume_saturated=True)
    doc = _complex_doc(C, cert, X.field, {"trim_at": list(args.at)})
    _emit(json.dumps(doc, indent=1) + "\n", args.output, out if args.output is None else None)
    if args.output:
        out.write(json.dumps(cert.to_json()) + "\n")
    return 0 if cert.virtual else 1


def cmd_vres_formula(args, out, err):
    try:
        shape = formula_shape(args.n, args.i, args.j)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out.write("".join(line + "\n" for line in shape.lines()))
    return 0


def cmd_vres_sat(args, out, err):
    X = _load(args, err)
    I = ideal_of_points(X)
    ell = len(partition_info(X).pi1)
    a = ell - 1 if args.a is None else args.a
    if a < 0:
        raise InputError("--a must be non-negative")
    C = vres_saturation(X, a, I)
    cert = is_virtual(C, I, assume_saturated=True)
    doc = _complex_doc(C, cert, X.field, {"saturation_exponent": a})
    _emit(json.dumps(doc, indent=1) + "\n", args.output, out if args.output is None else None)
    if args.output:
        out.write(json.dumps(cert.to_json()) + "\n")
    return 0 if cert.virtual else 1


def cmd_vres_min_a(args, out, err):
    X = _load(args, err)
    ell = len(partition_info(X).pi1)
    a_max = ell - 1 if args.max is None else args.max
    if a_max < 0:
        raise InputError("--max must be non-negative")
    a = min_sat_exponent(X, a_max)
    if a is None:
        out.write(f"none <= {a_max}\n" + _text_footer(X.field))
        return 1
    out.write(f"{a}\n" + _text_footer(X.field))
    return 0


def cmd_verify(args, out, err):
    X = _load(args, err)
    try:
        with open(args.cx) as fh:
            doc = json.load(fh)
        C = complex_from_json(doc)
    except OSError as exc:
        raise InputError(f"{args.cx}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.cx}: invalid JSON ({exc.msg})") from None
    except ValueError as exc:
        raise InputError(f"{args.cx}: {exc}") from None
    if C.field != X.field:
        raise InputError(f"{args.cx}: field: complex is over {C.field}, points over {X.field}")
    try:
        cert = is_virtual(C, ideal_of_points(X), assume_saturated=True)
    except ValueError as exc:
        raise InputError(f"{args.cx}: modules: {exc}") from None
    out.write(json.dumps(_annotate(X.field, cert.to_json())) + "\n")
    return 0 if cert.virtual else 1


def cmd_check(args, out, err):
    X = _load(args, err)
    foot = _text_footer(X.field)
    if args.what == "generic":
        ok = check_sufficiently_general(X)
        out.write(("true" if ok else "false") + "\n" + foot)
        return 0 if ok else 1
    if args.what == "keylemma":
        Y = normalize_convention(X)
        ell = len(partition_info(Y).pi1)
        a = ell - 1 if args.a is None else args.a
        try:
            ok = keylemma_check(Y, a)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        out.write(("true" if ok else "false") + "\n" + foot)
        return 0 if ok else 1
    # delta2
    n = len(X)
    if args.i is not None and args.j is not None:
        cases = [(args.i, args.j)]
    else:
        cases = [(i, n // (i + 1) - 1) for i in range(n)
                 if n % (i + 1) == 0 and i != n // (i + 1) - 1]
    if not cases:
        raise InputError(f"no (i,j) with i != j and (i+1)(j+1) = {n}")
    w = n + 2
    H = hilbert_eval(X, w, w)
    generic = is_generic_hf(X, w, w, H=H)
    D = diff2(H)
    all_ok = True
    for i, j in cases:
        try:
            E = expected_delta2_submatrix(n, i, j)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        ok = generic and [row[:j + 2] for row in D[:i + 2]] == E
        all_ok &= ok
        out.write(f"({i},{j}) {'true' if ok else 'false'}\n")
    out.write(foot)
    return 0 if all_ok else 1


# ---------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", metavar="fp:P",
                        help="compute over GF(P) instead of the rationals")

    p = argparse.ArgumentParser(prog="virtres", allow_abbrev=False,
                                description="Virtual resolutions of points in P1 x P1.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], allow_abbrev=False, help="random certified-general points")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--bound", type=int, default=1000)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    h = sub.add_parser("hilbert", parents=[common], allow_abbrev=False, help="Hilbert function window")
    h.add_argument("-i", "--input", required=True)
    h.add_argument("--rows", type=int)
    h.add_argument("--cols", type=int)
    h.add_argument("--diff", type=int, choices=(0, 1, 2), default=0)
    h.set_defaults(func=cmd_hilbert)

    b = sub.add_parser("betti", parents=[common], allow_abbrev=False, help="Betti table of a minimal resolution")
    b.add_argument("-i", "--input", required=True)
    b.add_argument("--sat-a", type=int, dest="sat_a")
    b.set_defaults(func=cmd_betti)

    v = sub.add_parser("vres", help="virtual resolutions", allow_abbrev=False)
    vs = v.add_subparsers(dest="vres_command", required=True)
    t = vs.add_parser("trim", parents=[common], allow_abbrev=False)
    t.add_argument("-i", "--input", required=True)
    t.add_argument("--at", type=_parse_pair, required=True, metavar="i,j")
    t.add_argument("-o", "--output")
    t.set_defaults(func=cmd_vres_trim)
    f = vs.add_parser("formula", parents=[common], allow_abbrev=False)
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--i", type=int, required=True)
    f.add_argument("--j", type=int, required=True)
    f.set_defaults(func=cmd_vres_formula)
    s = vs.add_parser("sat", parents=[common], allow_abbrev=False)
    s.add_argument("-i", "--input", required=True)
    s.add_argument("--a", type=int)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_vres_sat)
    m = vs.add_parser("min-a", parents=[common], allow_abbrev=False)
    m.add_argument("-i", "--input", required=True)
    m.add_argument("--max", type=int)
    m.set_defaults(func=cmd_vres_min_a)

    ve = sub.add_parser("verify", parents=[common], allow_abbrev=False, help="certify a complex file")
    ve.add_argument("-i", "--input", dest="cx", required=True)
    ve.add_argument("--against", dest="input", required=True)
    ve.set_defaults(func=cmd_verify)

    c = sub.add_parser("check", parents=[common], allow_abbrev=False, help="property checks")
    c.add_argument("what", choices=("generic", "keylemma", "delta2"))
    c.add_argument("-i", "--input", required=True)
    c.add_argument("--a", type=int)
    c.add_argument("--i", type=int, dest="i")
    c.add_argument("--j", type=int, dest="j")
    c.set_defaults(func=cmd_check)
    return p


def run(argv=None, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out, err)
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
