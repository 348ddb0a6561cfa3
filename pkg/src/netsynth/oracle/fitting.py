"""Multistart fitting of element values to a target admittance.

A skeleton's admittance N(s)/D(s) has coefficients that are sums of
monomials in the element values (spanning trees and two-forests), so with
log-values x every coefficient is a sum of exp(mask . x).  The mismatch with
a target Nt/Dt is measured on the cross products

    r_m(x) = (a_m - b_m) / (a_m + b_m),   a = N Dt,  b = D Nt,

taken coefficient by coefficient.  It vanishes exactly when the two rational
functions agree, ignores common factors, lies in [-1, 1] because every
coefficient is nonnegative, and is unchanged by impedance scaling (k) and
frequency scaling (s -> s/w0), so small and large coefficients weigh alike.
The reported residual is the Euclidean norm of r.  Minimization is damped
Gauss-Newton (Levenberg-Marquardt) run in one numpy batch over all
(target, start) pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..admittance import CanonicalAdmittance
from ..analysis import admittance_terms
from ..netlist.model import Netlist

LOG_BOUND = 30.0
START_RANGE = (1e-3, 1e3)


@dataclass(frozen=True)
class FitResult:
    topology: Netlist
    best_residual: float
    best_values: tuple
    starts: int
    seed: int

    def fitted_netlist(self) -> Netlist:
        """The skeleton with the best values (floats converted to BigReal)."""
        import mpmath

        return self.topology.with_values([mpmath.mpf(v) for v in self.best_values])


class CompiledSkeleton:
    """Monomial tables of a skeleton's admittance numerator and denominator."""

    def __init__(self, n: Netlist):
        self.netlist = n
        num_terms, den_terms = admittance_terms(n)
        self.n_elements = len(n)
        self.Mn, self.Pn = self._tables(num_terms)
        self.Md, self.Pd = self._tables(den_terms)

    def _tables(self, terms):
        deg = max(p for p, _ in terms)
        M = np.array([e for _, e in terms], dtype=float).reshape(len(terms), self.n_elements)
        P = np.zeros((len(terms), deg + 1))
        for t, (p, _) in enumerate(terms):
            P[t, p] = 1.0
        return M, P

    def coefficients(self, x: np.ndarray):
        """N, D (batch x degree) and their Jacobians (batch x degree x elements)."""
        mn = np.exp(x @ self.Mn.T)
        md = np.exp(x @ self.Md.T)
        N = mn @ self.Pn
        D = md @ self.Pd
        dN = np.einsum("bt,tp,te->bpe", mn, self.Pn, self.Mn)
        dD = np.einsum("bt,tp,te->bpe", md, self.Pd, self.Md)
        return N, D, dN, dD


def _toeplitz(t: np.ndarray, n_in: int, n_out: int) -> np.ndarray:
    """Batch convolution matrices: conv(t, v)[m] = sum_i T[m, i] v[i]."""
    B, lt = t.shape
    T = np.zeros((B, n_out, n_in))
    for i in range(n_in):
        for j in range(lt):
            if i + j < n_out:
                T[:, i + j, i] = t[:, j]
    return T


def target_arrays(targets: Sequence[CanonicalAdmittance]) -> tuple[np.ndarray, np.ndarray]:
    Nt = np.array([[float(y.k), float(y.k * y.a1), float(y.k * y.a0)] for y in targets])
    Dt = np.array([[0.0, 1.0, float(y.d1), float(y.d0)] for y in targets])
    return Nt, Dt


def _residual(model: CompiledSkeleton, x, TD, TN, want_jac=True):
    N, D, dN, dD = model.coefficients(x)
    a = np.einsum("bmi,bi->bm", TD, N)
    b = np.einsum("bmi,bi->bm", TN, D)
    # all coefficients are nonnegative, so |a| + |b| = a + b
    w = a + b
    live = w > 0
    safe = np.where(live, w, 1.0)
    r = np.where(live, (a - b) / safe, 0.0)
    if not want_jac:
        return r, None
    da = np.einsum("bmi,bie->bme", TD, dN)
    db = np.einsum("bmi,bie->bme", TN, dD)
    J = 2.0 * (b[:, :, None] * da - a[:, :, None] * db) / (safe ** 2)[:, :, None]
    J = np.where(live[:, :, None], J, 0.0)
    return r, J


def levenberg_marquardt(model: CompiledSkeleton, x0: np.ndarray, Nt: np.ndarray, Dt: np.ndarray,
                        max_iter: int = 400, tol: float = 1e-28):
    """Batched LM; returns final log-values and residual norms per row."""
    B, E = x0.shape
    len_out = max(model.Pn.shape[1] + Dt.shape[1], model.Pd.shape[1] + Nt.shape[1]) - 1
    TD = _toeplitz(Dt, model.Pn.shape[1], len_out)
    TN = _toeplitz(Nt, model.Pd.shape[1], len_out)
    x = x0.copy()
    lam = np.full(B, 1e-2)
    r, J = _residual(model, x, TD, TN)
    cost = np.einsum("bm,bm->b", r, r)
    active = np.ones(B, dtype=bool)
    eye = np.eye(E)
    for _ in range(max_iter):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        Ja, ra = J[idx], r[idx]
        H = np.einsum("bme,bmf->bef", Ja, Ja)
        g = np.einsum("bme,bm->be", Ja, ra)
        diag = np.einsum("bee->be", H)
        A = H + lam[idx, None, None] * (diag[:, :, None] * eye + 1e-12 * eye)
        try:
            step = -np.linalg.solve(A, g[:, :, None])[:, :, 0]
        except np.linalg.LinAlgError:
            step = -np.einsum("bef,bf->be", np.linalg.pinv(A), g)
        xn = np.clip(x[idx] + step, -LOG_BOUND, LOG_BOUND)
        rn, Jn = _residual(model, xn, TD[idx], TN[idx])
        cn = np.einsum("bm,bm->b", rn, rn)
        better = np.isfinite(cn) & (cn < cost[idx])
        good, bad = idx[better], idx[~better]
        x[good], r[good], J[good] = xn[better], rn[better], Jn[better]
        gain = cost[good] - cn[better]
        cost[good] = cn[better]
        lam[good] = np.maximum(lam[good] / 3.0, 1e-12)
        lam[bad] = lam[bad] * 4.0
        done = cost <= tol
        done[good] |= gain <= 1e-14 * np.maximum(cost[good], 1e-300)
        done |= lam > 1e12
        active &= ~done
    return x, np.sqrt(cost)


def random_starts(rng: np.random.Generator, rows: int, n_elements: int) -> np.ndarray:
    lo, hi = np.log(START_RANGE[0]), np.log(START_RANGE[1])
    return rng.uniform(lo, hi, size=(rows, n_elements))


def fit_many(skeleton: Netlist, targets: Sequence[CanonicalAdmittance], starts: int = 200,
             seed: int = 0, model: CompiledSkeleton | None = None) -> list[FitResult]:
    """Best fit of one skeleton against each target, all starts in one batch."""
    model = model or CompiledSkeleton(skeleton)
    rng = np.random.default_rng(seed)
    E = model.n_elements
    T = len(targets)
    x0 = random_starts(rng, T * starts, E)
    Nt, Dt = target_arrays(targets)
    Nt, Dt = np.repeat(Nt, starts, axis=0), np.repeat(Dt, starts, axis=0)
    x, res = levenberg_marquardt(model, x0, Nt, Dt)
    res = np.where(np.isfinite(res), res, np.inf).reshape(T, starts)
    x = x.reshape(T, starts, E)
    out = []
    for t in range(T):
        i = int(np.argmin(res[t]))
        out.append(FitResult(skeleton, float(res[t, i]), tuple(float(v) for v in np.exp(x[t, i])),
                             starts, seed))
    return out


def fit_elements(skeleton: Netlist, target: CanonicalAdmittance, starts: int = 200,
                 seed: int = 0) -> FitResult:
    """Multistart fit of a skeleton's element values to ``target``."""
    return fit_many(skeleton, [target], starts, seed)[0]
