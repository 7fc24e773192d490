"""Three interchangeable simplicity tests and the bilinear constraint counts.

* direct: dim M(omega) = m (annihilator rank).
* Cartan-Chevalley: omega is a chirality eigenvector and omega (x) omega*
  is proportional to the m-fold product of the candidate plane's basis
  (equivalently: a single surviving word in the adapted Witt expansion).
* generalized test: in a frame adapted to the candidate plane, for every
  Fock spinor phi the expansion of omega (x) phi* uses only the letters
  q_i and q_i p_i, with grade at least dim(M(omega) meet M(phi)).  The
  forbidden-letter part is evaluated through its exact algebraic
  equivalent, the [q_i, p_i]-left-eigenvalue condition on omega; grades
  are checked by trace probes over the 3^m candidate-letter words.  A
  literal expansion scan (method="words") is kept for cross-validation.

Verdicts must agree; a disagreement raises instead of reporting.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .errors import DimensionError, InternalCheckError, ZeroSpinorError
from .algebra import Algebra
from .linalg import Matrix
from .vectors import TNPBasis, WittFrame, is_tnp, normalize_tnp, p_vector, q_vector
from .spinors import Spinor, annihilator, complete_tnp, vector_act
from .bilinear import (
    BForm,
    apply_vector_chain,
    bilinear_form,
    expand_witt,
    iter_witt_words,
    probe_vectors,
    rep_context,
    spinor_column,
)


def is_simple_direct(omega: Spinor) -> tuple[bool, TNPBasis]:
    """Whether dim M(omega) = m; returns the annihilator alongside."""
    ann = annihilator(omega)
    return ann.dimension == omega.algebra.m, ann


def fock_annihilator(algebra: Algebra, amask: int) -> TNPBasis:
    """M(Psi_a) = span of (q_i where a_i = +1, p_i where a_i = -1)."""
    vectors = []
    for i in range(1, algebra.m + 1):
        if (amask >> (algebra.m - i)) & 1:
            vectors.append(p_vector(algebra, i))
        else:
            vectors.append(q_vector(algebra, i))
    return TNPBasis(algebra, vectors)


def tnp_intersection_dim(a: TNPBasis, b: TNPBasis) -> int:
    if a.dimension == 0 or b.dimension == 0:
        return 0
    rows = [v.coords() for v in a] + [v.coords() for v in b]
    return a.dimension + b.dimension - Matrix(rows).rank()


def _check_candidate(omega: Spinor, candidate: TNPBasis) -> TNPBasis:
    if omega.is_zero():
        raise ZeroSpinorError("simplicity tests need a nonzero spinor")
    omega.algebra.check_compatible(candidate.algebra)
    candidate = is_tnp(candidate.vectors)
    if candidate.dimension != omega.algebra.m:
        raise DimensionError(
            f"candidate plane has dimension {candidate.dimension}, need m = {omega.algebra.m}"
        )
    return candidate


def cartan_chevalley_test(
    omega: Spinor, candidate: TNPBasis, bform: BForm | None = None
) -> bool:
    """Chirality eigenvector + single-term self-expansion along the candidate."""
    candidate = _check_candidate(omega, candidate)
    if omega.chirality() is None:
        return False
    bform = bform or bilinear_form(omega.algebra)
    endo = bform.endo_from_pair(omega, omega)
    product = candidate.product_element()
    if product.is_zero():
        raise InternalCheckError("candidate basis product vanished")
    ratio = endo.proportionality(product)
    return ratio is not None and bool(ratio)


def _support_condition(omega: Spinor, frame: WittFrame) -> bool:
    """[u_i, w_i] omega = omega for all i: no forbidden letters appear in any
    omega (x) phi* expansion over the adapted frame."""
    for u, w in zip(frame.q_vecs, frame.p_vecs):
        uw = vector_act(u, vector_act(w, omega))
        wu = vector_act(w, vector_act(u, omega))
        if uw - wu != omega:
            return False
    return True


def theorem2_test(
    omega: Spinor,
    candidate: TNPBasis,
    bform: BForm | None = None,
    method: str = "fast",
) -> tuple[bool, dict]:
    """Generalized simplicity test against a maximal candidate plane.

    Returns (verdict, details); details carries k_m = dim M(omega) meet M(phi)
    for phi = omega and the measured minimal expansion grade when defined.
    """
    candidate = _check_candidate(omega, candidate)
    algebra = omega.algebra
    m = algebra.m
    bform = bform or bilinear_form(algebra)
    frame = normalize_tnp(candidate)
    ann = annihilator(omega)
    details: dict = {"k_m": ann.dimension, "minimal_grade": None}

    if method == "words":
        verdict = _theorem2_words(omega, frame, ann, bform)
    elif method == "fast":
        verdict = _theorem2_fast(omega, frame, ann, bform)
    else:
        raise DimensionError(f"unknown theorem2 method {method!r}")

    if verdict or _support_condition(omega, frame):
        details["minimal_grade"] = _minimal_self_grade(omega, frame, bform)
    return verdict, details


def _theorem2_fast(omega: Spinor, frame: WittFrame, ann: TNPBasis, bform: BForm) -> bool:
    algebra = omega.algebra
    if not _support_condition(omega, frame):
        return False
    sigma_cache: dict = {}
    for amask in range(1 << algebra.m):
        phi = Spinor.fock(algebra, amask)
        k_m = tnp_intersection_dim(ann, fock_annihilator(algebra, amask))
        if k_m == 0:
            continue
        for word in iter_witt_words(algebra.m, max_grade=k_m - 1, z_only=True):
            sigma = sigma_cache.get(word)
            if sigma is None:
                sigma = apply_vector_chain(probe_vectors(frame, word), omega)
                sigma_cache[word] = sigma
            if bform.inner(phi, sigma):
                return False
    return True


def _theorem2_words(omega: Spinor, frame: WittFrame, ann: TNPBasis, bform: BForm) -> bool:
    """Literal route: expand omega (x) phi* and inspect every nonzero word."""
    algebra = omega.algebra
    for amask in range(1 << algebra.m):
        phi = Spinor.fock(algebra, amask)
        k_m = tnp_intersection_dim(ann, fock_annihilator(algebra, amask))
        expansion = expand_witt(bform.endo_from_pair(omega, phi), frame)
        for word in expansion.coefficients:
            if not word.is_z_word() or word.grade < k_m:
                return False
    return True


def _minimal_self_grade(omega: Spinor, frame: WittFrame, bform: BForm):
    """Smallest grade with a nonzero word in the expansion of omega (x) omega*."""
    algebra = omega.algebra
    for grade in range(0, 2 * algebra.m + 1):
        for word in iter_witt_words(algebra.m, max_grade=grade, z_only=True):
            if word.grade != grade:
                continue
            sigma = apply_vector_chain(probe_vectors(frame, word), omega)
            if bform.inner(omega, sigma):
                return grade
    return None


def theorem2_m_constraints(
    omega: Spinor, candidate: TNPBasis, bform: BForm | None = None
) -> bool:
    """The k = 1 shortcut: <B phi, u_i omega> = 0 for all i over a spanning
    set of phi (the 2^m Fock spinors)."""
    candidate = _check_candidate(omega, candidate)
    algebra = omega.algebra
    bform = bform or bilinear_form(algebra)
    for u in candidate:
        image = vector_act(u, omega)
        for amask in range(1 << algebra.m):
            if bform.inner(Spinor.fock(algebra, amask), image):
                return False
    return True


# -- constraint accounting -----------------------------------------------------


def constraint_grades(m: int) -> list[int]:
    return [k for k in range(m) if (m - k) % 4 == 0]


def constraint_count(total_dimension: int) -> int:
    """Number of classical bilinear purity constraints in dimension 2m."""
    if total_dimension % 2 or total_dimension < 2:
        raise DimensionError("total dimension must be even and >= 2")
    m = total_dimension // 2
    return sum(comb(2 * m, k) for k in constraint_grades(m))


def iter_constraint_indices(m: int):
    for k in constraint_grades(m):
        yield from combinations(range(1, 2 * m + 1), k)


def evaluate_constraints(omega: Spinor, bform: BForm | None = None) -> tuple[int, int]:
    """Evaluate every constraint B(omega, gamma^ik...gamma^i1 omega) exactly;
    returns (generated, violated)."""
    if omega.is_zero():
        raise ZeroSpinorError("constraints are evaluated on nonzero spinors")
    algebra = omega.algebra
    bform = bform or bilinear_form(algebra)
    rep = rep_context(algebra)
    x = spinor_column(rep, omega)
    bx = bform.apply(x)
    zero = algebra.zero_scalar
    generated = 0
    violated = 0
    for indices in iter_constraint_indices(algebra.m):
        generated += 1
        probe = rep.dual_gamma_word(tuple(reversed(indices)))
        z = probe.apply(x)
        total = zero
        for a, b in zip(bx, z):
            if a and b:
                total = total + a * b
        if total:
            violated += 1
    return generated, violated


# -- aggregated report ----------------------------------------------------------


@dataclass
class SimplicityReport:
    m: int
    field: str
    nullity: int
    simple: bool
    verdict_direct: bool
    verdict_cartan_chevalley: bool
    verdict_theorem2: bool
    chirality: int | None
    k_m: int
    minimal_grade: int | None
    constraints_generated: int
    constraints_violated: int
    annihilator: TNPBasis
    candidate: TNPBasis


def report(omega: Spinor, bform: BForm | None = None) -> SimplicityReport:
    """Run all three tests (against M(omega) or a completion of it) and the
    constraint evaluator; verdict disagreement raises InternalCheckError."""
    algebra = omega.algebra
    bform = bform or bilinear_form(algebra)
    direct, ann = is_simple_direct(omega)
    candidate = ann if direct else complete_tnp(ann)
    cc = cartan_chevalley_test(omega, candidate, bform)
    t2, details = theorem2_test(omega, candidate, bform)
    if not (direct == cc == t2):
        raise InternalCheckError(
            f"simplicity verdicts disagree: direct={direct} cartan={cc} theorem2={t2}"
        )
    generated, violated = evaluate_constraints(omega, bform)
    return SimplicityReport(
        m=algebra.m,
        field=algebra.field,
        nullity=ann.dimension,
        simple=direct,
        verdict_direct=direct,
        verdict_cartan_chevalley=cc,
        verdict_theorem2=t2,
        chirality=omega.chirality(),
        k_m=details["k_m"],
        minimal_grade=details["minimal_grade"],
        constraints_generated=generated,
        constraints_violated=violated,
        annihilator=ann,
        candidate=candidate,
    )
