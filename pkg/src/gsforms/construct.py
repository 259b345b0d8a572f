"""End-to-end construction: boost the representation until the dimension
margin holds, assemble the fixed loci, compute the quotient-map invariants,
slice, and certify."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .action import (
    QuotientMapData,
    default_generation_bound,
    generation_certificate,
    invariant_basis,
    require_nonmodular,
    upstairs_ring,
)
from .bertini import SlicingBudget, SlicingState, slicing_loop
from .errors import BudgetExceeded, GSError, RepresentationError, ValidationError
from .ideals import Budget, HomIdeal, _Engine, block_order, projective_dimension
from .poly import MultiPoly, PolyRing
from .rep import SemilinearRep, bad_locus_dim, bad_locus_dim_fast, minors_ideal, nonscalar_faithful_check, sum_copies

log = logging.getLogger(__name__)


@dataclass
class PipelineParams:
    r: int = 2
    d_start: int | None = None      # default |E|
    d_step: int | None = None       # default |E|
    d_max_steps: int = 3
    m: int | None = None            # default: smallest m meeting the margin
    J: int | None = None            # default max(2, |G|)
    seed: int = 0
    slicing: SlicingBudget = field(default_factory=SlicingBudget)
    gb: Budget = field(default_factory=Budget)
    emit_x_ideal: bool = False
    x_degree_cap: int = 4
    per_step_checks: bool = False
    descent_dmax: int = 4
    orbit_degree: int | None = None     # degree of k'' over k'; default makes |k''| >= 25
    orbit_max_points: int = 20_000_000
    threads: int = 1                    # recorded only; everything runs sequentially

    def __post_init__(self):
        if self.r < 2:
            raise ValidationError(f"r = {self.r}; the construction needs r >= 2", kind="r-too-small")


@dataclass
class BadLocus:
    ideals: dict            # g -> HomIdeal of 2x2 minors over k'
    dims: dict              # g -> Groebner dimension
    fast_dims: dict         # g -> eigenvalue dimension

    @property
    def dim(self) -> int:
        return max(self.dims.values(), default=-1)


@dataclass
class ConstructionResult:
    rep: SemilinearRep          # boosted representation actually used
    m: int
    params: PipelineParams
    qmd: QuotientMapData
    hs: list
    gs: list
    es: list
    seed: int
    restart: int = 0
    bad: BadLocus | None = None
    slicing: SlicingState | None = None
    certificates: object = None
    x_ideal: list | None = None
    x_partial: bool = False

    @property
    def y_ideal(self) -> HomIdeal:
        return HomIdeal(upstairs_ring(self.rep), self.gs)

    @property
    def green(self) -> bool:
        return bool(self.certificates and self.certificates.green)


def margin_multiplier(n: int, dim_q: int, r: int) -> int:
    """Smallest m >= 1 with m (n - dim Q) > r."""
    if n <= dim_q:
        raise RepresentationError("the fixed locus fills projective space", kind="invalid-representation")
    return r // (n - dim_q) + 1


def boost_until_margin(rep: SemilinearRep, r: int, m: int | None = None) -> tuple[SemilinearRep, int]:
    dim_q = bad_locus_dim(rep)
    need = margin_multiplier(rep.n, dim_q, r)
    if m is None:
        m = need
    elif m < need:
        raise ValidationError(f"m = {m} copies give margin {m * (rep.n - dim_q)} <= r = {r}", kind="margin")
    return sum_copies(rep, m), m


def bad_locus_ideal(rep: SemilinearRep, budget: Budget | None = None) -> BadLocus:
    ring = upstairs_ring(rep)
    ideals, dims, fast = {}, {}, {}
    for g in rep.geometric_elements():
        Q = minors_ideal(rep, g, ring)
        ideals[g] = Q
        dims[g] = projective_dimension(Q, budget=budget)
        fast[g] = bad_locus_dim_fast(rep, g)
        if dims[g] != fast[g]:
            raise GSError(f"fixed-locus dimensions disagree for {rep.grpext.E.labels[g]}: {dims[g]} vs {fast[g]}")
    return BadLocus(ideals, dims, fast)


def quotient_map_data(rep: SemilinearRep, d_start: int | None = None, d_step: int | None = None,
                      max_steps: int = 3, J: int | None = None) -> QuotientMapData:
    """Degree-d invariants whose products pass the generation certificate."""
    order = rep.grpext.E.order
    d = d_start or order
    step = d_step or order
    J = J or default_generation_bound(rep)
    tried = []
    for _ in range(max_steps):
        qmd = invariant_basis(rep, d)
        cert = generation_certificate(rep, qmd, J)
        qmd.gen_cert = cert
        tried.append(d)
        if cert.ok and qmd.fs:
            return qmd
        log.info("generation certificate failed at d=%d, escalating", d)
        d += step
    raise BudgetExceeded(f"generation certificate failed for d in {tried}", kind="generation-certificate-exhausted")


def _staged(stage: str, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except GSError as err:
        if err.stage is None:
            err.stage = stage
        raise


def run_pipeline(rep: SemilinearRep, params: PipelineParams) -> ConstructionResult:
    """Construct Y and certify it; raises unless the mandatory certificates pass."""
    from .errors import CertificateFailure
    from .verify import certify_bundle

    _staged("validate", require_nonmodular, rep, None, "validate")
    check = nonscalar_faithful_check(rep)
    if not check.ok:
        raise RepresentationError(check.witness, kind="invalid-representation", stage="validate")
    boosted, m = _staged("boost", boost_until_margin, rep, params.r, params.m)
    bad = _staged("bad-locus", bad_locus_ideal, boosted, params.gb)
    log.info("m=%d, n=%d, dim Q=%d", m, boosted.n, bad.dim)
    qmd = _staged("quotient-map", quotient_map_data, boosted, params.d_start, params.d_step, params.d_max_steps, params.J)
    log.info("d=%d, s=%d", qmd.d, qmd.s)
    state = _staged(
        "bertini", slicing_loop, qmd.fs, bad.ideals, boosted.n, params.r, boosted.field,
        params.seed, params.slicing, params.gb, params.per_step_checks,
    )
    result = ConstructionResult(
        boosted, m, params, qmd, state.hs, state.gs, state.es, params.seed, state.restart, bad, state
    )
    if params.emit_x_ideal:
        result.x_ideal, result.x_partial = _staged("image-ideal", image_ideal_capped, result, params.x_degree_cap)
    result.certificates = _staged("verify", certify_bundle, result)
    if not result.certificates.green:
        name, cert = result.certificates.first_failure()
        raise CertificateFailure(f"certificate {name} failed: {cert.witness}", kind=name, stage="verify")
    return result


def image_ideal_capped(result, cap: int, budget: Budget | None = None) -> tuple[list[MultiPoly], bool]:
    """Relations among f_0..f_s of U-degree <= cap, and whether the list may be partial.

    Eliminates x and T from (m(x), U_i - f_i) over k, with k' written as
    k[x]/(m); a budget hit keeps the relations found so far.
    """
    rep = result.rep
    ext = rep.ext
    F = ext.base
    fs = result.qmd.fs
    nT, nU = rep.nplus1, len(fs)
    use_x = ext.degree > 1
    shift = 1 if use_x else 0
    nv = shift + nT + nU
    big = PolyRing(nv, F, "_v")
    gens = []
    if use_x:
        gens.append(MultiPoly(big, {(i,) + (0,) * (nv - 1): c for i, c in enumerate(ext.modulus) if c != F.zero}))
    K = ext.field
    for i, f in enumerate(fs):
        terms = {}
        for mono, c in f.terms.items():
            for t, a in enumerate(K.to_vector(c)):
                if a != F.zero:
                    key = ((t,) if use_x else ()) + mono + (0,) * nU
                    terms[key] = F.add(terms.get(key, F.zero), a)
        u = [0] * nv
        u[shift + nT + i] = 1
        terms[tuple(u)] = F.sub(terms.get(tuple(u), F.zero), F.one)
        gens.append(MultiPoly(big, {k: v for k, v in terms.items() if v != F.zero}))
    budget = budget or Budget(max_degree=max(cap * result.qmd.d + 2, 8), max_pairs=20_000)
    eng = _Engine(F, nv, block_order(shift + nT), budget)
    try:
        partial = not eng.run([dict(g.terms) for g in gens])
        polys = eng.reduced_basis()
    except BudgetExceeded:
        partial = True
        polys = [eng.polys[i] for i, a in enumerate(eng.active) if a]
    U = PolyRing(nU, F, "U")
    out = []
    for f in polys:
        if any(any(e for e in m[:shift + nT]) for m in f):
            continue
        g = MultiPoly(U, {m[shift + nT:]: c for m, c in f.items()})
        for deg, part in sorted(g.homogeneous_parts().items()):
            if deg <= cap and not part.is_zero() and part not in out:
                out.append(part)
            elif deg > cap:
                partial = True
    return out, partial
