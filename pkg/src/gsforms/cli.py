"""Command line: ``gsforms construct | verify | lemma``.

Exit codes: 0 green, 2 parse error, 3 validation error, 4 budget
exhausted, 5 certificate failure, 6 I/O error.
"""

from __future__ import annotations

import argparse
import configparser
import json
import logging
import sys

from .bundle import load_result, write_bundle
from .construct import run_pipeline
from .errors import BundleIOError, CertificateFailure, GSError, ParseError
from .groups import find_section_subgroups, fiber_product_reconstruct
from .jobspec import load_job, new_parser, parse_gamma, parse_group_extension
from .verify import certify_bundle

EXIT_OK = 0

log = logging.getLogger("gsforms")


def cmd_construct(args) -> int:
    overrides = {
        "seed": args.seed,
        "restarts": args.max_retries,
        "form_degree_start": args.form_degree_start,
        "form_degree_max": args.degree_cap,
        "emit_x_ideal": "true" if args.emit_x_ideal else None,
        "per_step_checks": "true" if args.per_step_downstairs_checks else None,
        "threads": args.threads,
    }
    job = load_job(args.input, overrides)
    result = run_pipeline(job.rep, job.params)
    extra = {}
    if result.slicing is not None and result.slicing.per_step:
        extra["per_step_singular_locus_in_q"] = " ".join("true" if x else "false" for x in result.slicing.per_step)
    write_bundle(result, job, args.out, extra)
    print(f"green bundle written to {args.out}: {len(result.gs)} forms, m={result.m}, d={result.qmd.d}, e={result.es}")
    return EXIT_OK


def cmd_verify(args) -> int:
    result, _ = load_result(args.bundle)
    bundle = certify_bundle(result)
    report = bundle.as_dict()
    print(json.dumps({"green": report["green"],
                      "certificates": {k: v["passed"] for k, v in report["certificates"].items()}},
                     sort_keys=True))
    if not bundle.green:
        name, cert = bundle.first_failure()
        raise CertificateFailure(f"certificate {name} failed: {cert.witness}", kind=name, stage="verify")
    return EXIT_OK


def cmd_lemma(args) -> int:
    cp = new_parser()
    try:
        with open(args.input, encoding="utf-8") as fh:
            cp.read_string(fh.read())
    except OSError as err:
        raise BundleIOError(f"cannot read {args.input}: {err}") from None
    except configparser.Error as err:
        raise ParseError(str(err)) from None
    grpext = parse_group_extension(cp, parse_gamma(cp))
    E, gamma = grpext.E, grpext.gamma
    subs = find_section_subgroups(grpext)
    print(f"|E| = {E.order}, |G| = {grpext.G.order}, |Gamma| = {gamma.order}; {len(subs)} qualifying H")
    bad = 0
    for sub in subs:
        rec = fiber_product_reconstruct(grpext, sub.elements)
        labels = " ".join(E.labels[h] for h in sorted(sub.elements))
        verdict = "isomorphic" if rec.ok else "FAILED"
        bad += not rec.ok
        print(f"H = {{{labels}}}: |E/H| = {rec.quotient.order}, |Gamma/H'| = {rec.gamma_quotient.order}, "
              f"fiber product {verdict}")
    return EXIT_OK if not bad else CertificateFailure.exit_code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gsforms", description="Certified equations for free quotients by finite groups.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="run the construction and write a bundle")
    c.add_argument("--input", required=True)
    c.add_argument("--out", required=True)
    c.add_argument("--seed", type=int)
    c.add_argument("--max-retries", type=int, help="full slicing restarts")
    c.add_argument("--form-degree-start", type=int)
    c.add_argument("--degree-cap", type=int, help="largest slicing form degree e")
    c.add_argument("--emit-x-ideal", action="store_true")
    c.add_argument("--threads", type=int, help="recorded; the computation runs in one thread")
    c.add_argument("--per-step-downstairs-checks", action="store_true")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="re-run all certificates on a bundle")
    v.add_argument("bundle")
    v.set_defaults(func=cmd_verify)

    lm = sub.add_parser("lemma", help="reduce an extension to finite quotients via fiber products")
    lm.add_argument("--input", required=True)
    lm.set_defaults(func=cmd_lemma)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except GSError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.exit_code


if __name__ == "__main__":
    sys.exit(main())
