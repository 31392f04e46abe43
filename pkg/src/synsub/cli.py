"""Command-line interface.

Exit status: 0 on success, 1 when the examined property fails (a witness is
reported), 2 on usage, parse or input errors.  Reports are JSON on stdout
unless ``--report`` names a file.
"""
from __future__ import annotations

import argparse
import hashlib
import sys

from . import harness
from . import io as sio
from .checkers import ALL_POSITIONS, EXISTS, RIGHT_EXTENSION, check_ic, check_sst
from .congruence import normalize, sst_closure, synonym_classes
from .errors import LanguageError, PreconditionNotMet
from .expressivity import SaturationCertificate, certify_saturation, expressivity_curve, reduce_to_generation
from .model import BUILTINS, ExplicitLanguage

EXIT_OK, EXIT_FAILS, EXIT_USAGE = 0, 1, 2

PROPERTIES = {
    "sst": None,
    "ic": EXISTS,
    "ic-all": ALL_POSITIONS,
    "right-ext": RIGHT_EXTENSION,
}


class UsageError(Exception):
    pass


def _source(args):
    """Resolve ``--lang``/``--builtin`` to ``(language, source, digest)``."""
    if args.builtin:
        lang = BUILTINS[args.builtin]()
        digest = "sha256:" + hashlib.sha256(f"builtin:{args.builtin}".encode()).hexdigest()
        return lang, f"builtin:{args.builtin}", digest
    lang = sio.load_language(args.lang)
    return lang, args.lang, sio.language_digest(lang)


def _horizon(args, lang, name="horizon"):
    value = getattr(args, name, None)
    return lang.horizon if value is None else value


def _echo(args):
    skip = {"func", "report"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _emit(args, results, source=None, digest=None):
    report = sio.build_report(args.command, _echo(args), source, digest, results)
    if args.report is not None:
        sio.save_report(report, args.report)
    else:
        sio.validate_report(report)
        sys.stdout.write(sio.dumps(report))


# --- commands --------------------------------------------------------------

def cmd_check(args):
    lang, src, digest = _source(args)
    H = _horizon(args, lang)
    variant = PROPERTIES[args.property]
    rep = check_sst(lang, H) if variant is None else check_ic(lang, H, variant)
    _emit(args, {"check": sio.check_to_dict(rep)}, src, digest)
    return EXIT_OK if rep.holds else EXIT_FAILS


def cmd_curve(args):
    lang, src, digest = _source(args)
    curve = expressivity_curve(lang, _horizon(args, lang, "max_len"))
    if args.format == "csv":
        if args.out:
            sio.curve_to_csv(curve, args.out)
        else:
            sys.stdout.write(sio.curve_csv(curve))
        if args.report is not None:
            sio.save_report(sio.build_report(args.command, _echo(args), src, digest, {"curve": sio.curve_to_dict(curve)}), args.report)
        return EXIT_OK
    results = {"curve": sio.curve_to_dict(curve)}
    if args.out:
        sio._write(sio.dumps(results["curve"]), args.out)
    _emit(args, results, src, digest)
    return EXIT_OK


def cmd_plateau(args):
    lang, src, digest = _source(args)
    curve = expressivity_curve(lang, _horizon(args, lang))
    _emit(args, {"plateau": curve.first_plateau, "curve": sio.curve_to_dict(curve)}, src, digest)
    return EXIT_OK


def cmd_certify(args):
    lang, src, digest = _source(args)
    H = _horizon(args, lang)
    try:
        result = certify_saturation(lang, H, args.ic)
    except PreconditionNotMet as exc:
        _emit(args, {"error": str(exc), "preconditions": [sio.check_to_dict(exc.report)]}, src, digest)
        return EXIT_FAILS
    _emit(args, {"saturation": sio.saturation_to_dict(result)}, src, digest)
    if not isinstance(result, SaturationCertificate):
        print(result.message, file=sys.stderr)
        return EXIT_FAILS
    return EXIT_OK


def cmd_normalize(args):
    lang, src, digest = _source(args)
    nf = normalize(lang, args.string)
    _emit(args, {"normalize": {"string": args.string, "normal_form": nf}}, src, digest)
    return EXIT_OK


def cmd_classes(args):
    lang, src, digest = _source(args)
    classes = synonym_classes(lang, _horizon(args, lang))
    _emit(args, {"classes": sio.classes_to_dict(classes)}, src, digest)
    return EXIT_OK


def cmd_close(args):
    lang, src, digest = _source(args)
    if not isinstance(lang, ExplicitLanguage):
        raise UsageError("close needs an explicit language")
    outcome = sst_closure(lang, _horizon(args, lang))
    results = {"closure": sio.closure_to_dict(outcome)}
    if outcome.completed:
        sio.save_language(outcome.language, args.out)
        results["output"] = args.out
    _emit(args, results, src, digest)
    return EXIT_OK if outcome.completed else EXIT_FAILS


def cmd_reduce(args):
    lang, src, digest = _source(args)
    try:
        reduced = reduce_to_generation(lang, args.string, args.target_gen)
    except PreconditionNotMet as exc:
        _emit(args, {"error": str(exc), "preconditions": [sio.check_to_dict(exc.report)]}, src, digest)
        return EXIT_FAILS
    _emit(
        args,
        {"reduce": {"string": args.string, "target_generation": args.target_gen, "reduced": reduced}},
        src,
        digest,
    )
    return EXIT_OK


def cmd_fuzz(args):
    if args.mode == "oracle-equiv":
        family = harness.explicit_family(args.samples, args.seed)
        suite = harness.run_property_suite(family, ["oracle-equiv"])
        _emit(args, {"suite": suite.to_dict()})
        return EXIT_OK if suite.ok else EXIT_FAILS
    template = _template(args)
    findings = harness.search_counterexample(template, args.samples)
    _emit(args, {"findings": [f.to_dict() for f in findings]})
    return EXIT_OK


def _template(args):
    k, H = args.alphabet_size, args.horizon
    if args.family == "explicit":
        return harness.ExplicitRandom(k, H, args.density, args.meanings, args.seed)
    if args.family == "transform":
        return harness.TransformRandom(k, args.states, H, args.seed)
    return harness.ClosureSeeded(k, H, args.seed_entries, args.meanings, args.seed)


def cmd_gen_lang(args):
    if args.kind == "explicit":
        spec = harness.ExplicitRandom(args.alphabet_size, args.horizon, args.density, args.meanings, args.seed)
    elif args.kind == "transform":
        spec = harness.TransformRandom(args.alphabet_size, args.states, args.horizon, args.seed)
    else:
        spec = harness.ClosureSeeded(args.alphabet_size, args.horizon, args.seed_entries, args.meanings, args.seed)
    lang = harness.generate(spec)
    sio.save_language(lang, args.out)
    _emit(args, {"language": sio.language_to_dict(lang), "output": args.out}, None, sio.language_digest(lang))
    return EXIT_OK


# --- parser ----------------------------------------------------------------

def _add_source(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--lang", metavar="F", help="language file (JSON)")
    g.add_argument("--builtin", choices=sorted(BUILTINS), help="named built-in language")


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser():
    parser = argparse.ArgumentParser(prog="synsub", description="Analyse interpreted languages under synonym substitution.")
    parser.add_argument("--report", metavar="F", help="write the JSON report to F instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide SST or an IC variant")
    _add_source(p)
    p.add_argument("--property", choices=sorted(PROPERTIES), default="sst")
    p.add_argument("--horizon", type=_positive_int)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("curve", help="distinct meanings per generation")
    _add_source(p)
    p.add_argument("--max-len", type=_positive_int)
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.add_argument("--out", metavar="F")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("plateau", help="least n with h(gen(n)) = h(gen(n+1))")
    _add_source(p)
    p.add_argument("--horizon", type=_positive_int)
    p.set_defaults(func=cmd_plateau)

    p = sub.add_parser("certify", help="finite-expressivity certificate")
    _add_source(p)
    p.add_argument("--horizon", type=_positive_int)
    p.add_argument("--ic", choices=[EXISTS, ALL_POSITIONS, RIGHT_EXTENSION], default=EXISTS)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("normalize", help="shortest synonym of a string")
    _add_source(p)
    p.add_argument("--string", required=True)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("classes", help="synonymy classes")
    _add_source(p)
    p.add_argument("--horizon", type=_positive_int)
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("close", help="complete an explicit language under substitution")
    _add_source(p)
    p.add_argument("--horizon", type=_positive_int)
    p.add_argument("--out", metavar="F", required=True)
    p.set_defaults(func=cmd_close)

    p = sub.add_parser("reduce", help="shorten a string via synonyms from gen(N)")
    _add_source(p)
    p.add_argument("--string", required=True)
    p.add_argument("--target-gen", type=_positive_int, required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("fuzz", help="randomized cross-checks and theorem stress search")
    p.add_argument("--mode", choices=["oracle-equiv", "theorem-stress"], required=True)
    p.add_argument("--samples", type=_positive_int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--family", choices=["explicit", "transform", "closure-seeded"], default="closure-seeded",
                   help="sample family for theorem-stress")
    # defaults sit where exists-IC and all-positions IC diverge often
    p.add_argument("--alphabet-size", type=_positive_int, default=1)
    p.add_argument("--horizon", type=_positive_int, default=5)
    p.add_argument("--density", type=float, default=0.6)
    p.add_argument("--meanings", type=_positive_int, default=8)
    p.add_argument("--states", type=_positive_int, default=3)
    p.add_argument("--seed-entries", type=_positive_int, default=3)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("gen-lang", help="generate a random language file")
    p.add_argument("--kind", choices=["explicit", "transform", "closure-seeded"], required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", metavar="F", required=True)
    p.add_argument("--alphabet-size", type=_positive_int, default=2)
    p.add_argument("--horizon", type=_positive_int, default=4)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--meanings", type=_positive_int, default=3)
    p.add_argument("--states", type=_positive_int, default=2)
    p.add_argument("--seed-entries", type=_positive_int, default=4)
    p.set_defaults(func=cmd_gen_lang)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (LanguageError, UsageError, ValueError) as exc:
        print(f"synsub {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
