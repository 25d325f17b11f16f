"""Optimization of sectional and biorthogonal curvature over 2-planes.

Planes are parametrized by unit pairs (h, k) on S^2 x S^2 (coordinates of
the SD/ASD parts in the H/K bases, a double cover of the Grassmannian).
With the operator blocks A = W+ + uI, B = Z, C = W- + uI:

    K(h, k)      = (h'Ah + k'Ck)/2 + h'Bk          sectional
    Kperp(h, k)  = (h'Ah + k'Ck)/2                 biorthogonal

since the cross term changes sign on the complement plane (h, -k) and
cancels in the average.  The biorthogonal extremes therefore have the
closed forms (w1+ + w1-)/2 + s/12 and (w3+ + w3-)/2 + s/12, which serve
as the oracle for the scan.

The scan itself is a coarse Fibonacci-sphere product grid followed by
Nelder-Mead refinement of the best cells on 4-dimensional tangent charts.
At the default budget it lands within SCAN_ACCURACY of the closed forms
on every model space, usually far closer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetTooSmall
from .forms import BLOCK_BASIS, Plane2, asd_form, complement, plane_from_sd_asd, sd_form
from .reporting import CheckReport
from .tensor import CurvatureDecomposition, RiemannTensor, decompose, operator_from_tensor

# accuracy the default budget guarantees against the closed forms
SCAN_ACCURACY = 1e-6

# documented floors; anything below gives garbage refinement starts
COARSE_FLOOR = 8
TOP_FLOOR = 1
STEPS_FLOOR = 10

_PHI = (1.0 + math.sqrt(5.0)) / 2.0


@dataclass(frozen=True)
class ScanBudget:
    """coarse x coarse grid cells, refine_top starts, refine_steps NM iterations."""

    coarse: int = 64
    refine_top: int = 16
    refine_steps: int = 200


DEFAULT_BUDGET = ScanBudget()


@dataclass
class PinchingReport:
    """Extremes of sectional and biorthogonal curvature with attaining planes."""

    k_min: float
    k_max: float
    k1perp: float
    k3perp: float
    delta: float | None  # k_min/k_max; None when k_max <= 0
    argmin_plane: Plane2
    argmax_plane: Plane2
    k1perp_plane: Plane2
    k3perp_plane: Plane2
    budget: ScanBudget = DEFAULT_BUDGET


def sectional(R: RiemannTensor, plane: Plane2) -> float:
    """K(P) = <M P, P> for the unit decomposable plane form P."""
    m = operator_from_tensor(R).matrix
    p = plane.form.coeffs
    return float(p @ m @ p)


def biorthogonal(R: RiemannTensor, plane: Plane2) -> float:
    """Kperp(P) = (K(P) + K(P_perp))/2."""
    m = operator_from_tensor(R).matrix
    p = plane.form.coeffs
    q = complement(plane).form.coeffs
    return float(0.5 * (p @ m @ p + q @ m @ q))


def k1perp_closed_form(dec: CurvatureDecomposition) -> float:
    return float((dec.wp_eigs[0] + dec.wm_eigs[0]) / 2.0 + dec.s / 12.0)


def k3perp_closed_form(dec: CurvatureDecomposition) -> float:
    return float((dec.wp_eigs[2] + dec.wm_eigs[2]) / 2.0 + dec.s / 12.0)


def operator_blocks(R: RiemannTensor) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(A, B, C) blocks of the operator in the SD/ASD basis."""
    mp = BLOCK_BASIS.T @ operator_from_tensor(R).matrix @ BLOCK_BASIS
    return mp[:3, :3], mp[:3, 3:], mp[3:, 3:]


def batch_sectional(R: RiemannTensor, hs: np.ndarray, ks: np.ndarray) -> np.ndarray:
    """Sectional values for paired rows of unit SD/ASD coordinates."""
    A, B, C = operator_blocks(R)
    aq = np.einsum("ni,ij,nj->n", hs, A, hs)
    cq = np.einsum("ni,ij,nj->n", ks, C, ks)
    cross = np.einsum("ni,ij,nj->n", hs, B, ks)
    return 0.5 * (aq + cq) + cross


def batch_biorthogonal(R: RiemannTensor, hs: np.ndarray, ks: np.ndarray) -> np.ndarray:
    A, _, C = operator_blocks(R)
    aq = np.einsum("ni,ij,nj->n", hs, A, hs)
    cq = np.einsum("ni,ij,nj->n", ks, C, ks)
    return 0.5 * (aq + cq)


def _fibonacci_sphere(n: int) -> np.ndarray:
    """n nearly uniform points on S^2; deterministic."""
    i = np.arange(n) + 0.5
    z = 1.0 - 2.0 * i / n
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    th = 2.0 * np.pi * i / _PHI
    return np.column_stack([r * np.cos(th), r * np.sin(th), z])


def _tangent_frame(v):
    a = (1.0, 0.0, 0.0) if abs(v[0]) < 0.9 else (0.0, 1.0, 0.0)
    u = (v[1] * a[2] - v[2] * a[1], v[2] * a[0] - v[0] * a[2], v[0] * a[1] - v[1] * a[0])
    n = math.sqrt(u[0] ** 2 + u[1] ** 2 + u[2] ** 2)
    u = (u[0] / n, u[1] / n, u[2] / n)
    w = (v[1] * u[2] - v[2] * u[1], v[2] * u[0] - v[0] * u[2], v[0] * u[1] - v[1] * u[0])
    return u, w


def _nelder_mead4(f, step: float, max_iter: int):
    """Derivative-free minimizer on R^4 started at the origin.

    Plain floats throughout; numpy overhead would dominate at this size.
    """
    pts = [(0.0, 0.0, 0.0, 0.0),
           (step, 0.0, 0.0, 0.0),
           (0.0, step, 0.0, 0.0),
           (0.0, 0.0, step, 0.0),
           (0.0, 0.0, 0.0, step)]
    vals = [f(p) for p in pts]
    for _ in range(max_iter):
        order = sorted(range(5), key=vals.__getitem__)
        pts = [pts[i] for i in order]
        vals = [vals[i] for i in order]
        if vals[4] - vals[0] < 1e-14:
            spread = max(abs(p[c] - pts[0][c]) for p in pts[1:] for c in range(4))
            if spread < 1e-9:
                break
        xw = pts[4]
        c0 = (pts[0][0] + pts[1][0] + pts[2][0] + pts[3][0]) * 0.25
        c1 = (pts[0][1] + pts[1][1] + pts[2][1] + pts[3][1]) * 0.25
        c2 = (pts[0][2] + pts[1][2] + pts[2][2] + pts[3][2]) * 0.25
        c3 = (pts[0][3] + pts[1][3] + pts[2][3] + pts[3][3]) * 0.25
        xr = (2 * c0 - xw[0], 2 * c1 - xw[1], 2 * c2 - xw[2], 2 * c3 - xw[3])
        fr = f(xr)
        if fr < vals[0]:
            xe = (3 * c0 - 2 * xw[0], 3 * c1 - 2 * xw[1], 3 * c2 - 2 * xw[2], 3 * c3 - 2 * xw[3])
            fe = f(xe)
            if fe < fr:
                pts[4], vals[4] = xe, fe
            else:
                pts[4], vals[4] = xr, fr
        elif fr < vals[3]:
            pts[4], vals[4] = xr, fr
        else:
            xc = (0.5 * (c0 + xw[0]), 0.5 * (c1 + xw[1]), 0.5 * (c2 + xw[2]), 0.5 * (c3 + xw[3]))
            fc = f(xc)
            if fc < vals[4]:
                pts[4], vals[4] = xc, fc
            else:
                b = pts[0]
                for i in range(1, 5):
                    p = pts[i]
                    pts[i] = (0.5 * (p[0] + b[0]), 0.5 * (p[1] + b[1]),
                              0.5 * (p[2] + b[2]), 0.5 * (p[3] + b[3]))
                    vals[i] = f(pts[i])
    best = min(range(5), key=vals.__getitem__)
    return pts[best], vals[best]


def _chart_point(h0, k0, t):
    """Map local chart coordinates back to unit (h, k)."""
    u1, u2 = _tangent_frame(h0)
    v1, v2 = _tangent_frame(k0)
    h = np.array([h0[c] + t[0] * u1[c] + t[1] * u2[c] for c in range(3)])
    k = np.array([k0[c] + t[2] * v1[c] + t[3] * v2[c] for c in range(3)])
    return h / np.linalg.norm(h), k / np.linalg.norm(k)


def _make_objective(A, B, C, h0, k0, sign, with_cross):
    """Unrolled float objective over a tangent chart at (h0, k0)."""
    a00, a01, a02 = A[0]
    a11, a12 = A[1][1], A[1][2]
    a22 = A[2][2]
    c00, c01, c02 = C[0]
    c11, c12 = C[1][1], C[1][2]
    c22 = C[2][2]
    u1, u2 = _tangent_frame(h0)
    v1, v2 = _tangent_frame(k0)
    h00, h01, h02 = h0
    k00, k01, k02 = k0
    u10, u11, u12 = u1
    u20, u21, u22 = u2
    v10, v11, v12 = v1
    v20, v21, v22 = v2

    def f(t):
        t0, t1, t2, t3 = t
        hx = h00 + t0 * u10 + t1 * u20
        hy = h01 + t0 * u11 + t1 * u21
        hz = h02 + t0 * u12 + t1 * u22
        n = 1.0 / math.sqrt(hx * hx + hy * hy + hz * hz)
        hx *= n
        hy *= n
        hz *= n
        kx = k00 + t2 * v10 + t3 * v20
        ky = k01 + t2 * v11 + t3 * v21
        kz = k02 + t2 * v12 + t3 * v22
        n = 1.0 / math.sqrt(kx * kx + ky * ky + kz * kz)
        kx *= n
        ky *= n
        kz *= n
        val = 0.5 * (
            a00 * hx * hx + a11 * hy * hy + a22 * hz * hz
            + 2.0 * (a01 * hx * hy + a02 * hx * hz + a12 * hy * hz)
            + c00 * kx * kx + c11 * ky * ky + c22 * kz * kz
            + 2.0 * (c01 * kx * ky + c02 * kx * kz + c12 * ky * kz)
        )
        if with_cross:
            val += (
                hx * (B[0][0] * kx + B[0][1] * ky + B[0][2] * kz)
                + hy * (B[1][0] * kx + B[1][1] * ky + B[1][2] * kz)
                + hz * (B[2][0] * kx + B[2][1] * ky + B[2][2] * kz)
            )
        return sign * val

    return f


def scan_extremes(R: RiemannTensor, budget: ScanBudget | None = None) -> PinchingReport:
    """Global extremes of K and Kperp over all 2-planes.

    Deterministic for a fixed budget.  Raises BudgetTooSmall below the
    documented floors (coarse >= 8, refine_top >= 1, refine_steps >= 10).
    """
    budget = budget or DEFAULT_BUDGET
    if (budget.coarse < COARSE_FLOOR or budget.refine_top < TOP_FLOOR
            or budget.refine_steps < STEPS_FLOOR):
        raise BudgetTooSmall(
            f"budget {budget} below floors ({COARSE_FLOOR}, {TOP_FLOOR}, {STEPS_FLOOR})")

    mp = BLOCK_BASIS.T @ operator_from_tensor(R).matrix @ BLOCK_BASIS
    A, B, C = mp[:3, :3], mp[:3, 3:], mp[3:, 3:]
    Al, Bl, Cl = A.tolist(), B.tolist(), C.tolist()

    n = budget.coarse
    hs = _fibonacci_sphere(n)
    ks = hs  # same node set on both factors
    aq = np.einsum("ni,ij,nj->n", hs, A, hs)
    cq = np.einsum("ni,ij,nj->n", ks, C, ks)
    base = 0.5 * (aq[:, None] + cq[None, :])
    cross = hs @ B @ ks.T
    ksec = base + cross

    hs_l = [tuple(v) for v in hs]
    step = 2.0 / math.sqrt(n)
    top = min(budget.refine_top, n * n)

    def refine(vals, sign, with_cross):
        flat = vals.ravel() * sign
        idx = np.sort(np.argpartition(flat, top - 1)[:top]) if top < flat.size else np.arange(flat.size)
        best_val = math.inf
        best_hk = None
        for ii in idx:
            hi, ki = divmod(int(ii), n)
            f = _make_objective(Al, Bl, Cl, hs_l[hi], hs_l[ki], sign, with_cross)
            t, v = _nelder_mead4(f, step, budget.refine_steps)
            if v < best_val:
                best_val = v
                best_hk = _chart_point(hs_l[hi], hs_l[ki], t)
        return sign * best_val, best_hk

    kmin_val, kmin_hk = refine(ksec, 1.0, True)
    kmax_val, kmax_hk = refine(ksec, -1.0, True)
    k1p_val, k1p_hk = refine(base, 1.0, False)
    k3p_val, k3p_hk = refine(base, -1.0, False)

    def value(h, k):
        return float(0.5 * (h @ A @ h + k @ C @ k) + h @ B @ k)

    # final consistency pass: the four candidate planes and their complements
    # are all genuine planes, so folding their sectional values into the
    # extremes enforces k_min <= k1perp and k3perp <= k_max numerically
    candidates = []
    for h, k in (kmin_hk, kmax_hk, k1p_hk, k3p_hk):
        candidates.append((value(h, k), h, k))
        candidates.append((value(h, -k), h, -k))
    lo = min(candidates, key=lambda c: c[0])
    hi = max(candidates, key=lambda c: c[0])
    if lo[0] < kmin_val:
        kmin_val, kmin_hk = lo[0], (lo[1], lo[2])
    if hi[0] > kmax_val:
        kmax_val, kmax_hk = hi[0], (hi[1], hi[2])

    def plane(hk):
        h, k = hk
        return plane_from_sd_asd(sd_form(h), asd_form(k))

    return PinchingReport(
        k_min=kmin_val,
        k_max=kmax_val,
        k1perp=k1p_val,
        k3perp=k3p_val,
        delta=(kmin_val / kmax_val) if kmax_val > 0 else None,
        argmin_plane=plane(kmin_hk),
        argmax_plane=plane(kmax_hk),
        k1perp_plane=plane(k1p_hk),
        k3perp_plane=plane(k3p_hk),
        budget=budget,
    )


def random_frames(rng: np.random.Generator, n: int) -> np.ndarray:
    """n oriented orthonormal frames, stacked (n, 4, 4), columns = vectors."""
    g = rng.normal(size=(n, 4, 4))
    q, r = np.linalg.qr(g)
    q = q * np.sign(np.einsum("nii->ni", r))[:, None, :]
    det = np.linalg.det(q)
    q[det < 0, :, 0] *= -1.0
    return q


def seaman_check(R: RiemannTensor, n_frames: int = 100, seed: int = 0,
                 tol: float = 1e-9) -> CheckReport:
    """|R(e1,e2,e3,e4)| <= (2/3)(K3perp - K1perp) over random oriented frames.

    Only the fully mixed component enters; the bound uses the closed-form
    biorthogonal extremes.
    """
    dec = decompose(R)
    bound = (2.0 / 3.0) * (k3perp_closed_form(dec) - k1perp_closed_form(dec))
    rng = np.random.default_rng(seed)
    q = random_frames(rng, n_frames)
    comp = np.einsum("ijkl,ni,nj,nk,nl->n", R.components,
                     q[:, :, 0], q[:, :, 1], q[:, :, 2], q[:, :, 3])
    slack = bound - np.abs(comp)
    n_viol = int((slack < -tol).sum())
    max_abs = float(np.abs(comp).max()) if n_frames else 0.0
    ratio = max_abs / bound if bound > 1e-15 else 0.0
    return CheckReport(
        name="seaman",
        passed=n_viol == 0,
        n_samples=n_frames,
        n_violations=n_viol,
        min_slack=float(slack.min()) if n_frames else 0.0,
        metrics={"bound": bound, "max_abs_component": max_abs, "max_ratio": ratio},
    )
