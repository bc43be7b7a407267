"""Quasi-ideal analysis: permutability, exact decision procedure, brute-force
oracle, cores, Engel conditions, subquasi chains and the identity suite.

A subspace H permutes with K when [H,K] + [K,H] <= H + K; a quasi-ideal
permutes with every subspace.  The exact decision procedure used here works
over any field:

1. H must be a subalgebra (permuting with K <= H forces [H,H] <= H).
2. For each basis generator h of H, the operators induced by y -> [y,h] and
   y -> [h,y] on L/H (well defined since H is a subalgebra) must be scalar
   multiples of the identity.

Justification: by bilinearity it is enough to permute with every
one-dimensional subspace Fx, which says exactly that every vector of L/H is
an eigenvector of both induced operators, and an operator all of whose
vectors are eigenvectors is a scalar.  Over finite prime fields the
definitional check (one representative per projective point) is available as
:func:`is_quasi_ideal_oracle`, and the test suite enforces agreement of the
two routes on the whole finite-field corpus.

The "generated by left Engel elements" hypothesis of the Engel clause is
tested on the basis generators of H, a sufficient instance of the general
hypothesis (existence of *some* Engel generating set is not decidable by
inspection).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .algebra import (
    LeibnizAlgebra,
    adjoint,
    bracket_subspaces,
    is_ideal,
    is_subalgebra,
    series,
    subalgebras,
)
from .errors import (
    DimensionMismatch,
    NotASubalgebra,
    PreconditionUnverified,
    UnsupportedField,
)
from .linalg import (
    DEFAULT_BUDGET,
    Subspace,
    echelonize,
    left_kernel,
    mat_is_zero,
    mat_pow,
    projective_points,
    vec,
    vec_add,
)


def permutes_with(alg: LeibnizAlgebra, h: Subspace, k: Subspace) -> bool:
    """[H,K] + [K,H] <= H + K, checked on basis products."""
    hk = bracket_subspaces(alg, h, k).sum(bracket_subspaces(alg, k, h))
    return h.sum(k).contains(hk)


@dataclass(frozen=True)
class QuasiIdealVerdict:
    holds: bool
    # one (alpha, beta) pair per basis row of H: the induced operators of
    # y -> [y,h] and y -> [h,y] on the quotient are alpha*id and beta*id
    certificate: tuple | None = None
    # (h, x, value) with value = [x,h] or [h,x] outside H + Fx
    witness: tuple | None = None

    def __bool__(self):
        return self.holds

    def to_json(self):
        out = {"holds": self.holds}
        if self.certificate is not None:
            out["certificate"] = [
                {"alpha": a.to_json(), "beta": b.to_json()}
                for a, b in self.certificate
            ]
        if self.witness is not None:
            h, x, value = self.witness
            out["witness"] = {
                "h": [s.to_json() for s in h],
                "x": [s.to_json() for s in x],
                "value": [s.to_json() for s in value],
            }
        return out


def _witness_in_span(alg, h_space, x, value) -> bool:
    # verifies a negative witness: value must escape H + Fx
    probe = h_space.sum(echelonize(alg.field, alg.dim, [x]))
    return not probe.contains_vector(value)


def is_quasi_ideal_in(
    alg: LeibnizAlgebra, h: Subspace, m: Subspace | None = None
) -> QuasiIdealVerdict:
    """Decide whether H is a quasi-ideal of the subalgebra M (of L itself
    when M is omitted).  Verdicts carry a replayable certificate or witness.
    """
    if m is None:
        m = alg.full()
    if h.ambient_dim != alg.dim or m.ambient_dim != alg.dim:
        raise DimensionMismatch("subspaces must live in the algebra")
    if not m.contains(h):
        raise DimensionMismatch("H must be contained in M")
    cache = alg._cache.setdefault("quasi_in", {})
    key = (h.rows, m.rows)
    if key in cache:
        return cache[key]
    verdict = _decide_quasi_in(alg, h, m)
    cache[key] = verdict
    return verdict


def _decide_quasi_in(alg, h, m):
    field = alg.field
    # subalgebra test first, with a bracket escaping H as witness
    for u in h.rows:
        for w in h.rows:
            val = alg.bracket(u, w)
            if not h.contains_vector(val):
                return QuasiIdealVerdict(False, witness=(u, w, val))

    # coordinates of M: v in M  ->  (v[p] for p in M.pivots)
    mpiv = m.pivots
    to_m = lambda v: tuple(v[p] for p in mpiv)
    lift = lambda c: tuple(
        sum((ci * row[j] for ci, row in zip(c, m.rows)), field.zero)
        for j in range(alg.dim)
    )
    h_in_m = echelonize(field, m.dim, [to_m(r) for r in h.rows])
    comp = h_in_m.non_pivots()
    if not comp:
        cert = tuple((field.zero, field.zero) for _ in h.rows)
        return QuasiIdealVerdict(True, certificate=cert)

    reps = []
    for c in comp:
        unit = [field.zero] * m.dim
        unit[c] = field.one
        reps.append(lift(tuple(unit)))

    def induced(op_vecs):
        # rows of the induced operator on M/H in the comp coordinates
        rows = []
        for w in op_vecs:
            r = h_in_m.reduce(to_m(w))
            rows.append(tuple(r[c] for c in comp))
        return tuple(rows)

    def scalar_of(hrow, side):
        # returns the scalar of the induced operator, or a verified witness
        images = [
            alg.bracket(x, hrow) if side == "right" else alg.bracket(hrow, x)
            for x in reps
        ]
        for x, w in zip(reps, images):
            if not m.contains_vector(w):
                # the bracket leaves M entirely, so it cannot land in H + Fx
                return None, (hrow, x, w)
        t = induced(images)
        for a in range(len(comp)):
            for b in range(len(comp)):
                if a != b and t[a][b]:
                    # reps[a] is not an eigenvector
                    return None, (hrow, reps[a], images[a])
        diag = [t[i][i] for i in range(len(comp))]
        for i in range(1, len(comp)):
            if diag[i] != diag[0]:
                # distinct eigenvalues: the sum of the two eigenvectors is
                # not an eigenvector
                x = vec_add(reps[0], reps[i])
                val = alg.bracket(x, hrow) if side == "right" else alg.bracket(hrow, x)
                return None, (hrow, x, val)
        return diag[0], None

    certificate = []
    for hrow in h.rows:
        alpha, witness = scalar_of(hrow, "right")
        if witness is not None:
            assert _witness_in_span(alg, h, witness[1], witness[2])
            return QuasiIdealVerdict(False, witness=witness)
        beta, witness = scalar_of(hrow, "left")
        if witness is not None:
            assert _witness_in_span(alg, h, witness[1], witness[2])
            return QuasiIdealVerdict(False, witness=witness)
        certificate.append((alpha, beta))
    return QuasiIdealVerdict(True, certificate=tuple(certificate))


def is_quasi_ideal(alg: LeibnizAlgebra, h: Subspace) -> QuasiIdealVerdict:
    return is_quasi_ideal_in(alg, h, None)


def is_quasi_ideal_oracle(
    alg: LeibnizAlgebra, h: Subspace, budget: int = DEFAULT_BUDGET
) -> bool:
    """Definitional check over a finite prime field: permute with Fx for one
    representative x per projective point.  By bilinearity this is equivalent
    to permuting with every subspace ([H, sum Fx_i] = sum [H, Fx_i])."""
    if not alg.field.is_finite:
        raise UnsupportedField("the oracle enumerates projective points")
    if h.ambient_dim != alg.dim:
        raise DimensionMismatch("subspace must live in the algebra")
    for x in projective_points(alg.field, alg.dim, budget=budget):
        probe = h.sum(echelonize(alg.field, alg.dim, [x]))
        for hrow in h.rows:
            if not probe.contains_vector(alg.bracket(x, hrow)):
                return False
            if not probe.contains_vector(alg.bracket(hrow, x)):
                return False
    return True


def core(alg: LeibnizAlgebra, h: Subspace) -> Subspace:
    """The largest ideal of L contained in H, as a greatest fixpoint:
    N_0 = H and N_{k+1} = {v in N_k : [v, e_j], [e_j, v] in N_k for all j}.
    """
    field = alg.field
    cur = h
    while True:
        if cur.is_zero():
            return cur
        rows = []
        for b in cur.rows:
            flat = []
            for j in range(alg.dim):
                ej = alg.basis_vector(j)
                flat.extend(cur.reduce(alg.bracket(b, ej)))
                flat.extend(cur.reduce(alg.bracket(ej, b)))
            rows.append(tuple(flat))
        kernel = left_kernel(field, rows)
        gens = []
        for coeffs in kernel.rows:
            v = [field.zero] * alg.dim
            for c, b in zip(coeffs, cur.rows):
                if c:
                    v = [x + c * y for x, y in zip(v, b)]
            gens.append(tuple(v))
        nxt = echelonize(field, alg.dim, gens)
        if nxt == cur:
            return cur
        cur = nxt


def is_left_engel(alg: LeibnizAlgebra, x: tuple) -> bool:
    """x is left Engel when y -> [y,x] is nilpotent (the finite-dimensional
    form of: for each y some power kills y)."""
    m = adjoint(alg, x, "right")
    return mat_is_zero(mat_pow(alg.field, m, alg.dim))


@dataclass(frozen=True)
class EngelReport:
    holds: bool
    exhaustive: bool  # False when only basis vectors plus samples were tried
    counterexample: tuple | None = None

    def __bool__(self):
        return self.holds


def is_engel_algebra(
    alg: LeibnizAlgebra,
    budget: int = DEFAULT_BUDGET,
    samples: int = 32,
    seed: int = 0,
) -> EngelReport:
    """Every element left Engel.  Exhaustive over finite fields within budget
    (nilpotency of y -> [y,x] only depends on Fx, so projective points
    suffice); otherwise basis vectors plus seeded samples, reported as such.
    """
    if alg.dim == 0:
        return EngelReport(True, True)
    if alg.field.is_finite and alg.field.order**alg.dim <= budget:
        for x in projective_points(alg.field, alg.dim, budget=budget):
            if not is_left_engel(alg, x):
                return EngelReport(False, True, x)
        return EngelReport(True, True)
    rng = random.Random(seed)
    candidates = [alg.basis_vector(i) for i in range(alg.dim)]
    for _ in range(samples):
        candidates.append(
            vec(alg.field, [rng.randrange(-9, 10) for _ in range(alg.dim)])
        )
    for x in candidates:
        if not is_left_engel(alg, x):
            return EngelReport(False, False, x)
    return EngelReport(True, False)


# ---------------------------------------------------------------------------
# subquasi chains
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubquasiChain:
    """Chain H = H_m qu H_{m-1} qu ... qu H_0 = L, stored ascending from H;
    every term is a quasi-ideal of the next."""

    chain: tuple  # (H, ..., L)

    @property
    def m(self) -> int:
        return len(self.chain) - 1

    def to_json(self):
        return {"m": self.m, "chain": [s.to_json() for s in self.chain]}


def _subquasi_bfs(alg: LeibnizAlgebra, budget: int):
    """Shortest subquasi depth and BFS parent for every subalgebra."""
    cache = alg._cache.get("subquasi_bfs")
    if cache is not None:
        return cache
    subs = subalgebras(alg, budget=budget)
    full = alg.full()
    depth = {full: 0}
    parent = {full: None}
    frontier = [full]
    while frontier:
        nxt = []
        for m in frontier:
            for s in subs:
                if s in depth or s.dim >= m.dim or not m.contains(s):
                    continue
                if is_quasi_ideal_in(alg, s, m).holds:
                    depth[s] = depth[m] + 1
                    parent[s] = m
                    nxt.append(s)
        frontier = nxt
    alg._cache["subquasi_bfs"] = (depth, parent)
    return depth, parent


def subquasi_chain(
    alg: LeibnizAlgebra,
    h: Subspace,
    max_steps: int | None = None,
    budget: int = DEFAULT_BUDGET,
):
    """Shortest chain of relative quasi-ideals from H up to L (breadth-first
    over the subalgebra lattice), or None if there is none within
    ``max_steps``."""
    if not is_subalgebra(alg, h):
        raise NotASubalgebra("subquasi chains consist of subalgebras")
    depth, parent = _subquasi_bfs(alg, budget)
    if h not in depth:
        return None
    if max_steps is not None and depth[h] > max_steps:
        return None
    chain = [h]
    while parent[chain[-1]] is not None:
        chain.append(parent[chain[-1]])
    return SubquasiChain(tuple(chain))


# ---------------------------------------------------------------------------
# identity suite for quasi-ideals and subquasi chains
# ---------------------------------------------------------------------------

PASS, FAIL, VACUOUS, SKIPPED = "pass", "fail", "vacuous", "skipped"


@dataclass
class LemmaSuiteReport:
    clauses: dict = dc_field(default_factory=dict)

    @property
    def failures(self):
        return [name for name, (status, _) in self.clauses.items() if status == FAIL]

    def ok(self) -> bool:
        return not self.failures

    def to_json(self):
        return {
            name: {"status": status, "detail": detail}
            for name, (status, detail) in self.clauses.items()
        }


def _saturating(chain):
    return lambda k: chain[min(k - 1, len(chain) - 1)] if k >= 1 else None


def lemma_suite(
    alg: LeibnizAlgebra,
    h: Subspace,
    chain: SubquasiChain | None = None,
) -> LemmaSuiteReport:
    """Evaluate the structural containments that hold for quasi-ideals and
    m-step subquasi-ideals, plus the perfect / Engel / core-free clauses.

    Precondition (verified here): H is a quasi-ideal of L, or ``chain`` is a
    valid subquasi chain from H to L.  Chain clauses are skipped when no
    chain is supplied; direct clauses are skipped when H is not a direct
    quasi-ideal.
    """
    report = LemmaSuiteReport()
    direct = is_quasi_ideal(alg, h).holds
    m = None
    if chain is not None:
        if chain.chain[0] != h or chain.chain[-1] != alg.full():
            raise PreconditionUnverified("chain must run from H to L")
        for lo, hi in zip(chain.chain, chain.chain[1:]):
            if not is_quasi_ideal_in(alg, lo, hi).holds:
                raise PreconditionUnverified("chain link is not a quasi-ideal")
        m = chain.m
    if not direct and m is None:
        raise PreconditionUnverified("H is neither a quasi-ideal nor chained")

    full = alg.full()
    sq = bracket_subspaces(alg, h, h)  # H^2
    sq_chain = series(alg, h, "omega_of_square")  # (H^2)^1, (H^2)^2, ...
    der_chain = series(alg, h, "derived")  # H^(1), H^(2), ...
    sq_at = _saturating(sq_chain)
    der_at = _saturating(der_chain)

    def wrap(space):
        return bracket_subspaces(alg, full, space).sum(
            bracket_subspaces(alg, space, full)
        )

    # bracket reflection: h in H, x in L, [x,h] in H  =>  [h,x] in H
    if direct:
        ok, detail = True, None
        for hrow in h.rows:
            for j in range(alg.dim):
                x = alg.basis_vector(j)
                if h.contains_vector(alg.bracket(x, hrow)):
                    if not h.contains_vector(alg.bracket(hrow, x)):
                        ok, detail = False, f"basis pair (h={hrow}, x=e{j+1})"
                        break
        report.clauses["reflected_brackets"] = (PASS if ok else FAIL, detail)
    else:
        report.clauses["reflected_brackets"] = (SKIPPED, "not a direct quasi-ideal")

    # [L, H^2] + [H^2, L] <= H
    if direct:
        status = PASS if h.contains(wrap(sq)) else FAIL
        report.clauses["square_bracket_absorbed"] = (status, None)
    else:
        report.clauses["square_bracket_absorbed"] = (SKIPPED, "needs m = 1")

    # [L, (H^2)^m] + [(H^2)^m, L] <= H for an m-step chain
    if m is not None and m >= 1:
        status = PASS if h.contains(wrap(sq_at(m))) else FAIL
        report.clauses["chain_square_power_absorbed"] = (status, f"m={m}")
    elif m == 0:
        report.clauses["chain_square_power_absorbed"] = (VACUOUS, "H = L")
    else:
        report.clauses["chain_square_power_absorbed"] = (SKIPPED, "no chain")

    # [L, (H^2)^n] + [(H^2)^n, L] <= (H^2)^(n-1) for n >= 2
    if direct:
        bad = None
        for n in range(2, len(sq_chain) + 3):
            if not sq_at(n - 1).contains(wrap(sq_at(n))):
                bad = n
                break
        report.clauses["square_power_descent"] = (
            (PASS, None) if bad is None else (FAIL, f"n={bad}")
        )
    else:
        report.clauses["square_power_descent"] = (SKIPPED, "needs m = 1")

    # [L, (H^2)^(m+n)] + [(H^2)^(m+n), L] <= (H^2)^n for n >= 1
    if m is not None and m >= 1:
        bad = None
        for n in range(1, len(sq_chain) + 3):
            if not sq_at(n).contains(wrap(sq_at(m + n))):
                bad = n
                break
        report.clauses["chain_square_power_descent"] = (
            (PASS, f"m={m}") if bad is None else (FAIL, f"m={m}, n={bad}")
        )
    elif m == 0:
        report.clauses["chain_square_power_descent"] = (VACUOUS, "H = L")
    else:
        report.clauses["chain_square_power_descent"] = (SKIPPED, "no chain")

    # [L, H^(m+n+1)] + [H^(m+n+1), L] <= H^(m+n) for n >= 1
    m_eff = m if m is not None and m >= 1 else 1
    if direct or (m is not None and m >= 1):
        bad = None
        for n in range(1, len(der_chain) + 3):
            if not der_at(m_eff + n).contains(wrap(der_at(m_eff + n + 1))):
                bad = n
                break
        report.clauses["derived_power_descent"] = (
            (PASS, f"m={m_eff}") if bad is None else (FAIL, f"m={m_eff}, n={bad}")
        )
    else:
        report.clauses["derived_power_descent"] = (VACUOUS, "H = L")

    # a perfect subquasi-ideal is an ideal
    if sq == h and not h.is_zero():
        status = PASS if is_ideal(alg, h) else FAIL
        report.clauses["perfect_subquasi_is_ideal"] = (status, None)
    else:
        report.clauses["perfect_subquasi_is_ideal"] = (VACUOUS, "H^2 != H")

    # a quasi-ideal generated by left Engel elements is an ideal
    if direct:
        if all(is_left_engel(alg, hrow) for hrow in h.rows):
            status = PASS if is_ideal(alg, h) else FAIL
            report.clauses["engel_generated_is_ideal"] = (status, None)
        else:
            report.clauses["engel_generated_is_ideal"] = (
                VACUOUS,
                "some basis generator is not left Engel",
            )
    else:
        report.clauses["engel_generated_is_ideal"] = (SKIPPED, "needs m = 1")

    # a core-free subquasi-ideal has nilpotent H^2
    if core(alg, h).is_zero():
        status = PASS if sq_chain[-1].is_zero() else FAIL
        report.clauses["corefree_square_nilpotent"] = (status, None)
    else:
        report.clauses["corefree_square_nilpotent"] = (VACUOUS, "core is nonzero")

    return report


def quasi_ideals(alg: LeibnizAlgebra, budget: int = DEFAULT_BUDGET):
    """All quasi-ideals of a finite-prime-field algebra, by the exact
    predicate over all subalgebras."""
    return [s for s in subalgebras(alg, budget=budget) if is_quasi_ideal(alg, s).holds]


__all__ = [
    "EngelReport",
    "LemmaSuiteReport",
    "QuasiIdealVerdict",
    "SubquasiChain",
    "core",
    "is_engel_algebra",
    "is_ideal",
    "is_left_engel",
    "is_quasi_ideal",
    "is_quasi_ideal_in",
    "is_quasi_ideal_oracle",
    "lemma_suite",
    "permutes_with",
    "quasi_ideals",
    "subquasi_chain",
]
