"""The output bundle: text files for the forms, a JSON certificate report
and a job.lock holding the resolved configuration.

    y_ideal.txt        one defining form of Y per line
    quotient_map.txt   d, s and the invariants f_0..f_s
    slicing.txt        seed, restart, form degrees and h_1..h_c
    certificates.json  certificate results (sorted keys; timings under "timings")
    job.lock           input sections plus resolved [params] and [result]
    x_ideal.txt        optional relations among the f_i, with the hs appended
"""

from __future__ import annotations

import configparser
import io
import json
import os

from .action import QuotientMapData, upstairs_ring
from .construct import ConstructionResult, boost_until_margin
from .errors import BundleIOError, ParseError
from .jobspec import JobSpec, job_from_config, new_parser, resolved_params
from .poly import PolyRing, format_poly, parse_poly

FILES = ("y_ideal.txt", "quotient_map.txt", "slicing.txt", "certificates.json", "job.lock")


def _keyvals(text: str) -> dict:
    out = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(f"expected 'key = value', got {line!r}")
        k, v = line.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def render_y_ideal(result: ConstructionResult) -> str:
    rep = result.rep
    lines = [f"# Y in P^{rep.n} over {rep.ext.field!r}: {len(result.gs)} forms in T0..T{rep.n}"]
    lines += [format_poly(g) for g in result.gs]
    return "\n".join(lines) + "\n"


def render_quotient_map(result: ConstructionResult) -> str:
    lines = ["# invariants f_0..f_s of degree d spanning the degree-d invariants over k",
             f"d = {result.qmd.d}", f"s = {result.qmd.s}"]
    lines += [f"f{i} = {format_poly(f)}" for i, f in enumerate(result.qmd.fs)]
    return "\n".join(lines) + "\n"


def render_slicing(result: ConstructionResult) -> str:
    lines = ["# forms h_j in U0..Us over k; g_j = h_j(f_0..f_s)",
             f"seed = {result.seed}", f"restart = {result.restart}", f"e = {' '.join(map(str, result.es))}"]
    lines += [f"h{j} = {format_poly(h)}" for j, h in enumerate(result.hs, start=1)]
    return "\n".join(lines) + "\n"


def render_certificates(result: ConstructionResult) -> str:
    doc = result.certificates.as_dict()
    doc["timings"] = result.certificates.timings()
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def render_lock(job: JobSpec, result: ConstructionResult, extra: dict | None = None) -> str:
    cp = new_parser()
    for sec in job.config.sections():
        if sec in ("params", "result"):
            continue
        cp.add_section(sec)
        for k, v in job.config[sec].items():
            cp[sec][k] = v
    cp.add_section("params")
    for k, v in resolved_params(result.params).items():
        cp["params"][k] = v
    cp.add_section("result")
    cp["result"]["m"] = str(result.m)
    cp["result"]["d"] = str(result.qmd.d)
    cp["result"]["e"] = " ".join(map(str, result.es))
    cp["result"]["seed"] = str(result.seed)
    for k, v in (extra or {}).items():
        cp["result"][k] = str(v)
    buf = io.StringIO()
    cp.write(buf)
    return buf.getvalue()


def render_x_ideal(result: ConstructionResult) -> str:
    lines = [f"# relations among f_0..f_s of U-degree <= {result.params.x_degree_cap}, then h_1..h_c",
             f"partial = {'true' if result.x_partial else 'false'}"]
    lines += [f"rel = {format_poly(p)}" for p in result.x_ideal or []]
    lines += [f"h = {format_poly(h)}" for h in result.hs]
    return "\n".join(lines) + "\n"


def write_bundle(result: ConstructionResult, job: JobSpec, outdir: str, extra: dict | None = None) -> None:
    files = {
        "y_ideal.txt": render_y_ideal(result),
        "quotient_map.txt": render_quotient_map(result),
        "slicing.txt": render_slicing(result),
        "certificates.json": render_certificates(result),
        "job.lock": render_lock(job, result, extra),
    }
    if result.x_ideal is not None:
        files["x_ideal.txt"] = render_x_ideal(result)
    try:
        os.makedirs(outdir, exist_ok=True)
        for name, text in files.items():
            with open(os.path.join(outdir, name), "w", encoding="utf-8") as fh:
                fh.write(text)
    except OSError as err:
        raise BundleIOError(f"cannot write bundle to {outdir}: {err}") from None


def _read(outdir: str, name: str) -> str:
    try:
        with open(os.path.join(outdir, name), encoding="utf-8") as fh:
            return fh.read()
    except OSError as err:
        raise BundleIOError(f"cannot read {name} in {outdir}: {err}") from None


def load_result(outdir: str) -> tuple[ConstructionResult, JobSpec]:
    """Rebuild a result from the bundle files alone (no pipeline state)."""
    cp = new_parser()
    try:
        cp.read_string(_read(outdir, "job.lock"))
    except configparser.Error as err:
        raise ParseError(f"job.lock: {err}") from None
    if not cp.has_section("result"):
        raise ParseError("job.lock has no [result] section")
    res = cp["result"]
    lock_result = dict(res)
    cp.remove_section("result")
    job = job_from_config(cp)
    try:
        m = int(lock_result["m"])
    except (KeyError, ValueError):
        raise ParseError("job.lock lacks a valid m") from None
    boosted, _ = boost_until_margin(job.rep, job.params.r, m)
    ring = upstairs_ring(boosted)
    gen = boosted.ext.gen if boosted.ext.degree > 1 else None

    qm = _keyvals(_read(outdir, "quotient_map.txt"))
    d = int(qm["d"])
    fs = []
    i = 0
    while f"f{i}" in qm:
        fs.append(parse_poly(qm[f"f{i}"], ring, gen))
        i += 1
    if not fs:
        raise ParseError("quotient_map.txt lists no invariants")
    qmd = QuotientMapData(d, fs)

    sl = _keyvals(_read(outdir, "slicing.txt"))
    U = PolyRing(len(fs), boosted.field, "U")
    hs = []
    j = 1
    while f"h{j}" in sl:
        hs.append(parse_poly(sl[f"h{j}"], U))
        j += 1
    es = [int(x) for x in sl.get("e", "").split()]

    ys = [line.strip() for line in _read(outdir, "y_ideal.txt").splitlines()]
    gs = [parse_poly(line, ring, gen) for line in ys if line and not line.startswith("#")]
    result = ConstructionResult(boosted, m, job.params, qmd, hs, gs, es, int(sl.get("seed", job.params.seed)),
                                int(sl.get("restart", 0)))
    return result, job
