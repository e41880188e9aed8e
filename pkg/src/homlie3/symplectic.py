"""Symplectic and metric structures on 3-Hom-Lie algebras, the derivation
correspondence for metric algebras, phase spaces, and the nilpotent
polynomial-truncation extension used to produce metric symplectic examples.
"""
from __future__ import annotations

from dataclasses import dataclass

from .exactlin import InputError, Mat, ONE, Tensor4, ZERO, mat_inverse, solve_linear
from .homlie import (
    Algebra3, CheckReport, PreconditionError, Witness, check_algebra,
    is_derivation,
)
from .reps import Rep3, coadjoint_rep, dual_representation, semidirect_sum
from .bialgebra import BilForm, check_invariance, standard_form
from .prelie import PreLie3, check_prelie, left_multiplication, subadjacent_tensor


def _fourterm_check(a: Algebra3, W: Mat) -> CheckReport:
    """w([x,y,z], a(w)) - w([y,z,w], a(x)) + w([z,w,x], a(y))
    - w([w,x,y], a(z)) = 0 on all basis 4-tuples."""
    n, c, A = a.dim, a.bracket, a.twist
    # term(x, y, z, w) = sum_l c(x, y, z, l) * (W @ A)[l][w]; accumulate the
    # alternating sum sparsely: each bracket entry lands in one of the four
    # slot patterns for every choice of the remaining pairing index.
    WA = W @ A
    residual: dict = {}

    def add(key, v):
        val = residual.get(key, ZERO) + v
        if val:
            residual[key] = val
        else:
            residual.pop(key, None)

    for i, j, k, l, v in c.items():
        for t in range(n):
            wt = WA.entries[l][t]
            if not wt:
                continue
            vw = v * wt
            add((i, j, k, t), vw)
            add((t, i, j, k), -vw)
            add((k, t, i, j), vw)
            add((j, k, t, i), -vw)
    checked = n ** 4
    if not residual:
        return CheckReport(True, checked)
    key = min(residual)
    return CheckReport(False, checked, Witness(
        "symplectic_cocycle", key, (residual[key],), (ZERO,)))


def check_symplectic(a: Algebra3, form: BilForm) -> CheckReport:
    """Skew, nondegenerate, twist-compatible (w(a(x),a(y)) = w(x,y)),
    and the four-term cocycle identity."""
    n = a.dim
    if form.dim != n:
        raise InputError(f"form dim {form.dim} vs algebra dim {n}")
    W, A = form.matrix, a.twist
    parts = []
    skew = W.transpose() == -W
    parts.append(("skew", CheckReport(skew, 1, None if skew else
                                      Witness("form_skew", (), (), ()))))
    nondeg = mat_inverse(W) is not None
    parts.append(("nondegenerate", CheckReport(nondeg, 1, None if nondeg else
                                               Witness("form_nondegenerate", (), (), ()))))
    compat = A.transpose() @ W @ A == W
    parts.append(("twist_compatible", CheckReport(compat, 1, None if compat else
                                                  Witness("twist_compatible", (), (), ()))))
    parts.append(("cocycle", _fourterm_check(a, W)))
    return CheckReport.combine(parts)


def check_metric(a: Algebra3, form: BilForm) -> CheckReport:
    """Symmetric, nondegenerate, B([x,y,z],w) + B(z,[x,y,w]) = 0.

    Note the metric identity carries no twist (unlike pseudo-metric
    invariance, which pairs against a(w))."""
    n, c = a.dim, a.bracket
    if form.dim != n:
        raise InputError(f"form dim {form.dim} vs algebra dim {n}")
    B = form.matrix
    parts = []
    sym = B.transpose() == B
    parts.append(("symmetric", CheckReport(sym, 1, None if sym else
                                           Witness("form_symmetric", (), (), ()))))
    nondeg = mat_inverse(B) is not None
    parts.append(("nondegenerate", CheckReport(nondeg, 1, None if nondeg else
                                               Witness("form_nondegenerate", (), (), ()))))
    witness = None
    checked = 0
    for x in range(n):
        for y in range(n):
            for z in range(n):
                rz = c.row(x, y, z)
                for w in range(n):
                    checked += 1
                    rw = c.row(x, y, w)
                    if not rz and not rw:
                        continue
                    val = (sum((v * B.entries[l][w] for l, v in rz.items()), ZERO)
                           + sum((v * B.entries[z][l] for l, v in rw.items()), ZERO))
                    if val:
                        witness = Witness("metric", (x, y, z, w), (val,), (ZERO,))
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    parts.append(("invariance", CheckReport(witness is None, checked, witness)))
    return CheckReport.combine(parts)


def is_metric_derivation(a: Algebra3, form: BilForm, D: Mat) -> CheckReport:
    """D is a derivation, skew with respect to the metric, and invertible."""
    parts = []
    w = is_derivation(a, D)
    parts.append(("derivation", CheckReport(w is None, 1, w)))
    B = form.matrix
    bskew = D.transpose() @ B + B @ D == Mat.zeros(a.dim, a.dim)
    parts.append(("B_skew", CheckReport(bskew, 1, None if bskew else
                                        Witness("B_skew", (), (), ()))))
    inv = mat_inverse(D) is not None
    parts.append(("invertible", CheckReport(inv, 1, None if inv else
                                            Witness("D_invertible", (), (), ()))))
    return CheckReport.combine(parts)


def symplectic_from_derivation(a: Algebra3, form: BilForm, D: Mat) -> tuple:
    """From a metric and an invertible B-skew derivation, the 2-form defined
    by w(a(x), y) = B(Dx, y); in matrices transpose(A).W = transpose(D).B.

    Returns (BilForm, CheckReport) where the report re-verifies all
    symplectic axioms on the constructed form.
    """
    pre = is_metric_derivation(a, form, D)
    if not pre.passed:
        raise PreconditionError("need an invertible metric-skew derivation",
                                witness=pre.witness)
    met = check_metric(a, form)
    if not met.passed:
        raise PreconditionError("form is not a metric", witness=met.witness)
    At_inv = mat_inverse(a.twist.transpose())
    if At_inv is None:
        raise PreconditionError("twist must be invertible")
    W = At_inv @ D.transpose() @ form.matrix
    if W.transpose() != -W:
        raise PreconditionError("constructed form is not skew; the metric, "
                                "twist and derivation are incompatible")
    omega = BilForm(a.dim, W, "skew")
    return omega, check_symplectic(a, omega)


def derivation_from_symplectic(a: Algebra3, metric: BilForm,
                               omega: BilForm) -> tuple:
    """Recover D with B(Dx,y) = w(a(x),y): D = transpose(B^-1).(tA.W)^T...
    concretely D = inverse(B) applied on the left of transpose(tA.W).

    Returns (D, CheckReport) with the metric-derivation verdict."""
    Binv = mat_inverse(metric.matrix)
    if Binv is None:
        raise PreconditionError("metric is degenerate")
    # transpose(D).B = transpose(A).W  =>  D = transpose(B^-1 . W^T . A)
    D = (Binv @ omega.matrix.transpose() @ a.twist).transpose()
    return D, is_metric_derivation(a, metric, D)


def compatible_prelie_from_symplectic(a: Algebra3, omega: BilForm) -> tuple:
    """The product with w({x,y,z}, a(w)) = -w(a(z), [x,y,w]).

    Solved per basis triple from nondegeneracy; the result is re-verified as
    a pre-Lie structure whose cyclic sum returns the original bracket.
    Returns (PreLie3, CheckReport).
    """
    rep = check_symplectic(a, omega)
    if not rep.passed:
        raise PreconditionError("not a symplectic structure", witness=rep.witness)
    n, c, A, W = a.dim, a.bracket, a.twist, omega.matrix
    # {x,y,z} = u where (W.A)^T u = g, g_w = -w(a(z), [x,y,w])
    system = (W @ A).transpose()
    acols = [A.col(i) for i in range(n)]
    entries = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                g = []
                az = acols[k]
                for w in range(n):
                    row = c.row(i, j, w)
                    g.append(-sum((az[l] * W.entries[l][m] * v
                                   for m, v in row.items()
                                   for l in range(n) if az[l] and W.entries[l][m]),
                                  ZERO))
                sol = solve_linear(system, g)
                if not sol.consistent:
                    raise PreconditionError("defining system inconsistent")
                for l, v in enumerate(sol.particular):
                    if v:
                        entries.append((i, j, k, l, v))
    product = Tensor4.from_entries((n,) * 4, entries)
    p = PreLie3(n, product, A, label="symplectic-compatible")
    parts = [("prelie", check_prelie(p))]
    compat = subadjacent_tensor(p.product) == c
    parts.append(("compatible", CheckReport(compat, 1, None if compat else
                                            Witness("compatible", (), (), ()))))
    return p, CheckReport.combine(parts)


def canonical_phase_form(n: int) -> BilForm:
    """w(x+f, y+g) = <f,y> - <g,x> on L + L*: blocks [[0,-I],[I,0]]."""
    m = [[ZERO] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        m[i][n + i] = -ONE
        m[n + i][i] = ONE
    return BilForm(2 * n, Mat(m), "skew")


def check_phase_space(base: Algebra3, total: Algebra3) -> CheckReport:
    """total (on L + L*) is a phase space of base: valid algebra whose twist
    is a + a*, both summands are subalgebras, the first projection restricts
    to base's bracket, and the canonical pairing form is symplectic."""
    n = base.dim
    if total.dim != 2 * n:
        raise InputError(f"phase space dim {total.dim}, expected {2 * n}")
    parts = [("algebra", check_algebra(total))]
    tw = Mat.block_diag(base.twist, base.twist.transpose())
    tw_ok = total.twist == tw
    parts.append(("twist_split", CheckReport(tw_ok, 1, None if tw_ok else
                                             Witness("twist_split", (), (), ()))))
    sub_w = None
    proj_w = None
    checked = 0
    for i, j, k, l, v in total.bracket.items():
        checked += 1
        if i < n and j < n and k < n:
            if l >= n and sub_w is None:
                sub_w = Witness("subalgebra_base", (i, j, k, l), (v,), (ZERO,))
            elif l < n and v != base.bracket.get(i, j, k, l) and proj_w is None:
                proj_w = Witness("base_bracket", (i, j, k, l), (v,),
                                 (base.bracket.get(i, j, k, l),))
        if i >= n and j >= n and k >= n and l < n and sub_w is None:
            sub_w = Witness("subalgebra_dual", (i, j, k, l), (v,), (ZERO,))
    if proj_w is None:
        for i, j, k, l, v in base.bracket.items():
            if total.bracket.get(i, j, k, l) != v:
                proj_w = Witness("base_bracket", (i, j, k, l),
                                 (total.bracket.get(i, j, k, l),), (v,))
                break
    parts.append(("subalgebras", CheckReport(sub_w is None, checked, sub_w)))
    parts.append(("base_bracket", CheckReport(proj_w is None, checked, proj_w)))
    parts.append(("symplectic", check_symplectic(total, canonical_phase_form(n))))
    return CheckReport.combine(parts)


def phase_space_from_prelie(p: PreLie3) -> tuple:
    """The semidirect sum of the sub-adjacent algebra with the dual of the
    left-multiplication representation, together with its phase-space
    verdict. Returns (Algebra3, CheckReport)."""
    pre = check_prelie(p)
    if not pre.passed:
        raise PreconditionError("not a 3-Hom-pre-Lie algebra", witness=pre.witness)
    from .prelie import subadjacent
    base = subadjacent(p)
    lrep = Rep3(base, p.dim, left_multiplication(p), p.twist)
    dual, dual_rep_ok = dual_representation(lrep)
    if not dual_rep_ok.passed:
        raise PreconditionError("dual of left multiplication fails the "
                                "representation axioms",
                                witness=dual_rep_ok.witness)
    total = semidirect_sum(base, dual, check=False)
    total = Algebra3(total.dim, total.bracket, total.twist, label="phase-space")
    return total, check_phase_space(base, total)


def prelie_from_phase_space(base: Algebra3, total: Algebra3) -> tuple:
    """A pre-Lie structure on base extracted from one of its phase spaces.

    The compatible product of the canonical symplectic form is computed on
    the whole phase space and restricted along the first factor (isotropy of
    the first factor makes the restriction close). Returns
    (PreLie3, CheckReport); the report covers the phase-space axioms,
    closure of the restriction, validity of the restricted product, and
    sub-adjacency to base's bracket.
    """
    n = base.dim
    parts = [("phase_space", check_phase_space(base, total))]
    if not parts[0][1].passed:
        return None, CheckReport.combine(parts)
    big, big_rep = compatible_prelie_from_symplectic(total, canonical_phase_form(n))
    parts.append(("total_prelie", big_rep))
    entries = []
    closure_w = None
    for i, j, k, l, v in big.product.items():
        if i < n and j < n and k < n:
            if l < n:
                entries.append((i, j, k, l, v))
            elif closure_w is None:
                closure_w = Witness("restriction_closure", (i, j, k, l), (v,), (ZERO,))
    parts.append(("closure", CheckReport(closure_w is None,
                                         len(entries), closure_w)))
    p = PreLie3(n, Tensor4.from_entries((n,) * 4, entries), base.twist,
                label="from-phase-space")
    parts.append(("prelie", check_prelie(p)))
    compat = subadjacent_tensor(p.product) == base.bracket
    parts.append(("subadjacent", CheckReport(compat, 1, None if compat else
                                             Witness("subadjacent", (), (), ()))))
    return p, CheckReport.combine(parts)


@dataclass(frozen=True)
class NilpotentExtension:
    """L_n = L (x) (t F[t] / t^n F[t]) with its counting derivation, and the
    metric symplectic double on L_n + L_n*."""
    base: Algebra3
    steps: int
    extension: Algebra3   # dim = base.dim * (steps - 1)
    derivation: Mat       # x (x) t^p -> p * x (x) t^p
    double: Algebra3      # extension + dual via coadjoint action
    metric: BilForm       # f(y) + g(x)
    double_derivation: Mat  # D + D*, D* f = -f . D
    omega: BilForm        # w(twist(u), v) = B(D^ u, v)


def nilpotent_extension(a: Algebra3, steps: int) -> tuple:
    """Build the truncated-polynomial extension bundle; steps is the power n
    of the truncation (degrees 1..n-1 survive). Returns the bundle plus a
    report re-verifying every claimed structure from scratch.
    """
    if steps < 2:
        raise InputError("steps must be at least 2 (degree range is 1..steps-1)")
    pre = check_algebra(a)
    if not pre.passed:
        raise PreconditionError("base is not a 3-Hom-Lie algebra", witness=pre.witness)
    n, deg = a.dim, steps - 1
    N = n * deg

    def idx(i, p):  # basis e_i (x) t^p, p = 1..deg
        return (p - 1) * n + i

    entries = []
    for i, j, k, l, v in a.bracket.items():
        for p in range(1, deg + 1):
            for q in range(1, deg + 1):
                for r in range(1, deg + 1):
                    if p + q + r <= deg:
                        entries.append((idx(i, p), idx(j, q), idx(k, r),
                                        idx(l, p + q + r), v))
    bracket = Tensor4.from_entries((N,) * 4, entries)
    twist = a.twist
    for _ in range(deg - 1):
        twist = Mat.block_diag(twist, a.twist)
    ext = Algebra3(N, bracket, twist, label=f"{a.label or 'L'}[t]/t^{steps}")
    D = Mat.diag([p for p in range(1, deg + 1) for _ in range(n)])

    double = semidirect_sum(ext, coadjoint_rep(ext), check=False)
    double = Algebra3(double.dim, double.bracket, double.twist,
                      label="nilpotent-double")
    metric = standard_form(N)
    Dhat = Mat.block_diag(D, -D.transpose())
    omega, om_rep = symplectic_from_derivation(double, metric, Dhat)

    parts = [
        ("extension_algebra", check_algebra(ext)),
        ("derivation", CheckReport(is_derivation(ext, D) is None, 1,
                                   is_derivation(ext, D))),
        ("double_algebra", check_algebra(double)),
        ("metric", check_metric(double, metric)),
        ("double_derivation", is_metric_derivation(double, metric, Dhat)),
        ("symplectic", om_rep),
    ]
    bundle = NilpotentExtension(a, steps, ext, D, double, metric, Dhat, omega)
    return bundle, CheckReport.combine(parts)
