"""Job files: sectioned key-value text read with configparser.

    [field]          base = 5 | Q;  modulus = x^2 + 2;  automorphisms = x; 4*x
    [galois-group]   group = cyclic 2   (or labels = ... and table = row; row; ...)
    [group]          E = cyclic 4;  G = cyclic 2;  iota = 0:0 1:2;  pi = 0:0 1:1 2:0 3:1
                     (E.labels / E.table and G.labels / G.table for explicit tables)
    [rep]            kind = regular | matrices;  tau.<label> = 2 0; 0 1
    [params]         r, seed, m, d_start, ... (see PARAM_KEYS)

``automorphisms`` lists the image of x under each element of Gamma, in
the order of Gamma's element labels.  Without a modulus, k' = k and Gamma
must be trivial.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, fields
from fractions import Fraction

from .bertini import SlicingBudget
from .construct import PipelineParams
from .errors import BundleIOError, GSError, ParseError, ValidationError
from .fields import make_extension, parse_base_field, trivial_extension
from .groups import FiniteGroup, GroupExtension, group_from_table, parse_group, parse_map, validate_extension
from .ideals import Budget
from .rep import SemilinearRep, regular_rep, rep_from_generators

SLICING_KEYS = {f.name for f in fields(SlicingBudget)}
GB_KEYS = {f.name for f in fields(Budget)}
PIPELINE_KEYS = {f.name for f in fields(PipelineParams)} - {"slicing", "gb"}
BOOL_KEYS = {"emit_x_ideal", "per_step_checks"}
PARAM_KEYS = SLICING_KEYS | GB_KEYS | PIPELINE_KEYS


def new_parser() -> configparser.ConfigParser:
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",))
    cp.optionxform = str
    return cp


def _items(text: str) -> list[str]:
    return [t.strip() for t in text.replace(";", ",").split(",") if t.strip()]


def _group(section, prefix: str, shorthand_key: str, name: str) -> FiniteGroup:
    lab_key, tab_key = f"{prefix}labels", f"{prefix}table"
    if lab_key in section:
        labels = section[lab_key].split()
        rows = [r.split() for r in section.get(tab_key, "").split(";") if r.strip()]
        return group_from_table(labels, rows, name)
    if shorthand_key in section:
        return parse_group(section[shorthand_key])
    raise ParseError(f"group {name} is not described (need {shorthand_key} or {lab_key})")


def _matrix(text: str, F) -> list[list]:
    rows = [r.split() for r in text.split(";") if r.strip()]
    try:
        return [[F.from_fraction(Fraction(x)) for x in row] for row in rows]
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad matrix entry in {text!r}") from None


@dataclass
class JobSpec:
    config: configparser.ConfigParser
    ext: object
    grpext: GroupExtension
    rep: SemilinearRep
    params: PipelineParams


def parse_gamma(cp: configparser.ConfigParser) -> FiniteGroup:
    if cp.has_section("galois-group"):
        return _group(cp["galois-group"], "", "group", "Gamma")
    return FiniteGroup.trivial()


def parse_group_extension(cp: configparser.ConfigParser, gamma: FiniteGroup) -> GroupExtension:
    """The [group] section over a given Gamma, validated for exactness."""
    if not cp.has_section("group"):
        raise ParseError("missing section [group]")
    gsec = cp["group"]
    E = _group(gsec, "E.", "E", "E")
    G = _group(gsec, "G.", "G", "G")
    iota = parse_map(gsec.get("iota", "trivial" if G.order == 1 else ""), G, E)
    pi = parse_map(gsec.get("pi", "trivial" if gamma.order == 1 else ""), E, gamma)
    grpext = GroupExtension(G, E, gamma, iota, pi)
    validate_extension(grpext).require()
    return grpext


def parse_extension_data(cp: configparser.ConfigParser) -> tuple[object, GroupExtension]:
    if not cp.has_section("field"):
        raise ParseError("missing section [field]")
    fsec = cp["field"]
    base = parse_base_field(fsec.get("base", ""))
    gamma = parse_gamma(cp)
    if "modulus" in fsec and fsec["modulus"].strip():
        autos = _items(fsec.get("automorphisms", "x"))
        ext = make_extension(base, fsec["modulus"], autos, gamma)
    else:
        if gamma.order != 1:
            raise ValidationError("Gamma is nontrivial but no modulus is given", kind="composition-table-mismatch")
        ext = trivial_extension(base)
        gamma = ext.gamma
    return ext, parse_group_extension(cp, gamma)


def parse_rep(cp: configparser.ConfigParser, ext, grpext: GroupExtension) -> SemilinearRep:
    sec = cp["rep"] if cp.has_section("rep") else {}
    kind = sec.get("kind", "regular").strip()
    if kind == "regular":
        return regular_rep(ext, grpext)
    if kind != "matrices":
        raise ParseError(f"unknown representation kind {kind!r}")
    gens = {}
    for key, val in sec.items():
        if key.startswith("tau."):
            gens[grpext.E.index(key[4:])] = _matrix(val, ext.base)
    return rep_from_generators(ext, grpext, gens)


def parse_params(cp: configparser.ConfigParser) -> PipelineParams:
    sec = cp["params"] if cp.has_section("params") else {}
    slicing, gb, pipe = {}, {}, {}
    for key, raw in sec.items():
        if key not in PARAM_KEYS:
            raise ParseError(f"unknown parameter {key!r}")
        raw = raw.strip()
        if key in BOOL_KEYS:
            val = raw.lower() in ("1", "true", "yes", "on")
        elif raw.lower() in ("", "auto", "none"):
            val = None
        else:
            try:
                val = int(raw)
            except ValueError:
                raise ParseError(f"parameter {key} = {raw!r} is not an integer") from None
        if key in SLICING_KEYS:
            slicing[key] = val
        elif key in GB_KEYS:
            gb[key] = val
        else:
            pipe[key] = val
    return PipelineParams(slicing=SlicingBudget(**slicing), gb=Budget(**gb), **pipe)


def load_job(path: str, overrides: dict | None = None) -> JobSpec:
    cp = new_parser()
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise BundleIOError(f"cannot read {path}: {err}") from None
    try:
        cp.read_string(text, source=path)
    except configparser.Error as err:
        raise ParseError(f"{path}: {err}") from None
    if overrides:
        if not cp.has_section("params"):
            cp.add_section("params")
        for k, v in overrides.items():
            if v is not None:
                cp["params"][k] = str(v)
    return job_from_config(cp)


def job_from_config(cp: configparser.ConfigParser) -> JobSpec:
    try:
        ext, grpext = parse_extension_data(cp)
        rep = parse_rep(cp, ext, grpext)
        params = parse_params(cp)
    except GSError as err:
        if err.stage is None:
            err.stage = "input"
        raise
    except (KeyError, ValueError, TypeError) as err:
        raise ParseError(f"malformed job description: {err}", stage="input") from None
    return JobSpec(cp, ext, grpext, rep, params)


def resolved_params(params: PipelineParams) -> dict:
    """Every parameter with its effective value, for job.lock."""
    out = {}
    for f in fields(PipelineParams):
        if f.name in ("slicing", "gb"):
            continue
        out[f.name] = getattr(params, f.name)
    for f in fields(SlicingBudget):
        out[f.name] = getattr(params.slicing, f.name)
    for f in fields(Budget):
        out[f.name] = getattr(params.gb, f.name)
    return {k: ("auto" if v is None else str(v).lower() if isinstance(v, bool) else str(v)) for k, v in sorted(out.items())}
