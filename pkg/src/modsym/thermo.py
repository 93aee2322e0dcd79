"""Pressure, root function beta(t), and Gibbs moments for the decorated shift.

Two estimators are provided.  The main one discretizes the transfer
operator on Chebyshev-Lobatto nodes per (coset, sign) vertex, with the
countable digit tail of each residue class folded in through Hurwitz
zeta values (constant plus linear correction of the interpolant at 0);
its leading eigenvalue gives the pressure.  The second one iterates
finite-depth cylinder partition sums directly (exact enumeration with
per-word hyperbolic traces when the word count is small, otherwise a
uniform-grid function iteration) and serves as an independent
cross-check.  The vertex graph is bipartite in the sign coordinate, so
eigen-data is extracted from the squared operator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import brentq
from scipy.special import zeta as hurwitz_zeta

from .contfrac import SignedWord
from .cosets import CosetTable, build_coset_table
from .homology import HomologyData, build_homology
from .psl2 import word_to_matrix


class BetaOutOfDomain(ValueError):
    """beta outside the summability half-line (1/2, infinity)."""


class NoConvergence(RuntimeError):
    """Power iteration failed to settle within the iteration cap."""


class BracketFailure(RuntimeError):
    """No sign change of the pressure found on the scanned beta range."""


class NonHyperbolic(ValueError):
    """Periodic word whose matrix has |trace| <= 2."""


class MomentCheckError(AssertionError):
    """Eigenvector moments disagree with finite differences of the pressure."""


@dataclass(frozen=True)
class NumericsConfig:
    digit_cutoff: int = 200          # K: largest digit magnitude summed explicitly
    collocation_degree: int = 24     # m: polynomial degree per vertex
    tolerance: float = 1e-8
    cylinder_depth: int = 10         # n: depth of cylinder partition sums
    tail_mode: str = "zeta-tail"     # or "truncate"
    grid_points: int = 1025          # uniform grid of the cylinder estimator
    enum_limit: int = 2_000_000      # word-count bound for exact enumeration
    beta_min: float = 0.52
    beta_max: float = 8.0
    fd_step: float = 1e-4
    self_check: bool = True

    def __post_init__(self):
        if self.digit_cutoff < 1 or self.collocation_degree < 2:
            raise ValueError("cutoff must be >= 1 and degree >= 2")
        if self.tolerance <= 0 or self.cylinder_depth < 1:
            raise ValueError("tolerance must be positive and depth >= 1")
        if self.tail_mode not in ("zeta-tail", "truncate"):
            raise ValueError(f"unknown tail mode {self.tail_mode!r}")

    def provenance(self, method: str, **extra) -> dict:
        rec = {
            "method": method,
            "K": self.digit_cutoff,
            "m": self.collocation_degree,
            "n": self.cylinder_depth,
            "tolerance": self.tolerance,
            "tail": self.tail_mode,
        }
        rec.update(extra)
        return rec


@dataclass
class GibbsMoments:
    mean_j: np.ndarray
    mean_i: float
    alpha: np.ndarray
    beta: float
    provenance: dict


@dataclass
class PressureEstimate:
    value: float
    provenance: dict


@dataclass
class LevelData:
    """Everything the numerics need for one level N."""

    table: CosetTable
    homology: HomologyData
    j_values: np.ndarray  # shape (kappa, 2g), float copies of the exact classes

    @property
    def level(self) -> int:
        return self.table.level

    @property
    def two_g(self) -> int:
        return self.j_values.shape[1]


def build_level_data(N: int, cache_dir=None) -> LevelData:
    table = build_coset_table(N, cache_dir=cache_dir)
    hom = build_homology(table)
    j = np.array(
        [[float(c) for c in vec] for vec in hom.classes], dtype=float
    ).reshape(table.size, 2 * table.invariants.genus)
    return LevelData(table, hom, j)


def _as_t_vector(level: LevelData, t) -> np.ndarray:
    t = np.atleast_1d(np.asarray(t, dtype=float)) if t is not None else np.zeros(0)
    if t.size == 0:
        t = np.zeros(level.two_g)
    if t.shape != (level.two_g,):
        raise ValueError(f"t must have length {level.two_g}, got shape {t.shape}")
    return t


def hyperbolic_log_eigenvalue(trace: int) -> float:
    """log of the larger eigenvalue modulus of a det-1 matrix from its trace."""
    T = abs(trace)
    if T <= 2:
        raise NonHyperbolic(f"|trace| = {T} <= 2")
    if T < 10**12:
        return math.log((T + math.sqrt(T * T - 4)) / 2.0)
    # large traces: avoid squaring overflow, 4/T^2 underflows harmlessly
    ratio = 4.0 / (float(T) * float(T)) if T < 10**150 else 0.0
    return math.log(T) + math.log1p(math.sqrt(1.0 - ratio)) - math.log(2.0)


def potential_I_on_cylinder(word: SignedWord) -> float:
    """Birkhoff sum of the expansion potential at the word's periodic point.

    Odd words are doubled with negated digits to keep the periodic
    extension alternating; the result is still the per-period sum for
    the original length.
    """
    digits = word.digits
    if not digits:
        raise ValueError("empty word has no periodic point")
    if not word.is_alternating:
        raise ValueError("word must alternate in sign")
    if len(digits) % 2 == 0:
        m = word_to_matrix(digits)
        return 2.0 * hyperbolic_log_eigenvalue(m.a + m.d)
    m = word_to_matrix(digits)
    # matrix of the negated word is [[a,-b],[-c,d]] up to overall sign
    tr_doubled = m.a * m.a + m.d * m.d - 2 * m.b * m.c
    return hyperbolic_log_eigenvalue(tr_doubled)


# ---------------------------------------------------------------------------
# collocation operator


def _lobatto_nodes(m: int) -> np.ndarray:
    return (1.0 - np.cos(np.pi * np.arange(m + 1) / m)) / 2.0


def _bary_weights(m: int) -> np.ndarray:
    w = np.ones(m + 1)
    w[1::2] = -1.0
    w[0] *= 0.5
    w[m] *= 0.5
    return w


def _bary_rows(points: np.ndarray, nodes: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Barycentric interpolation rows: out[i] @ f(nodes) = f(points[i])."""
    pts = points.ravel()
    diff = pts[:, None] - nodes[None, :]
    exact = np.isclose(diff, 0.0, atol=1e-15)
    with np.errstate(divide="ignore", invalid="ignore"):
        r = weights[None, :] / diff
        rows = r / r.sum(axis=1, keepdims=True)
    hit = exact.any(axis=1)
    if hit.any():
        rows[hit] = 0.0
        rows[hit, exact[hit].argmax(axis=1)] = 1.0
    return rows.reshape(points.shape + (nodes.size,))


def _diff_matrix(nodes: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Barycentric differentiation matrix on the given nodes."""
    n = nodes.size
    D = np.zeros((n, n))
    for j in range(n):
        for l in range(n):
            if l != j:
                D[j, l] = (weights[l] / weights[j]) / (nodes[j] - nodes[l])
        D[j, j] = -D[j].sum()
    return D


def _zeta_sprime(s: float, q: np.ndarray) -> np.ndarray:
    # derivative of the Hurwitz zeta in s, by central difference
    h = 1e-6
    return (hurwitz_zeta(s + h, q) - hurwitz_zeta(s - h, q)) / (2 * h)


class TransferOperator:
    """Chebyshev-collocation discretization at one level.

    Functions live on vertex x node; vertex (e, +1) occupies block 2e
    and (e, -1) block 2e+1.  Blocks of the matrix depend on the digit
    class only through the smallest magnitude a0 of the class, so they
    are shared across cosets.
    """

    def __init__(self, level: LevelData, cfg: NumericsConfig):
        self.level = level
        self.cfg = cfg
        m = cfg.collocation_degree
        self.nodes = _lobatto_nodes(m)
        self.weights = _bary_weights(m)
        D = _diff_matrix(self.nodes, self.weights)
        self.d0 = D[0]
        self.d0_2 = (D @ D)[0]
        self.e0 = np.zeros(m + 1)
        self.e0[0] = 1.0
        N = level.level
        # smallest magnitude per (residue, sign)
        self.a0_for = {}
        for r in range(N):
            self.a0_for[(r, 1)] = r if r > 0 else N
            self.a0_for[(r, -1)] = (N - r) if r > 0 else N

    @property
    def size(self) -> int:
        return 2 * self.level.table.size * (self.nodes.size)

    def _class_blocks(self, beta: float, with_log: bool):
        """One (m+1)x(m+1) block per smallest magnitude a0 in 1..N."""
        cfg = self.cfg
        N = self.level.level
        K = cfg.digit_cutoff
        y = self.nodes
        npts = y.size
        blocks = {}
        for a0 in range(1, N + 1):
            mags = np.arange(a0, K + 1, N, dtype=float)
            B = np.zeros((npts, npts))
            if mags.size:
                ay = mags[None, :] + y[:, None]          # (npts, na)
                W = ay ** (-2.0 * beta)
                if with_log:
                    W = W * (2.0 * np.log(ay))
                R = _bary_rows(1.0 / ay, y, self.weights)  # (npts, na, npts)
                B = np.einsum("ja,jal->jl", W, R)
            if cfg.tail_mode == "zeta-tail":
                a_first = mags[-1] + N if mags.size else float(a0)
                q = (a_first + y) / N

                def tail(s):
                    # sum over a = a_first, a_first + N, ... of (a + y)^{-s},
                    # or its -d/dbeta when log weights are requested
                    if not with_log:
                        return N ** (-s) * hurwitz_zeta(s, q)
                    return 2 * math.log(N) * N ** (-s) * hurwitz_zeta(s, q) \
                        - 2 * N ** (-s) * _zeta_sprime(s, q)

                # Taylor rows of the interpolant at the branch endpoint 0:
                # f(u) ~ f(0) + u f'(0) + u^2 f''(0) / 2
                s0 = 2.0 * beta
                B = B + tail(s0)[:, None] * self.e0[None, :] \
                    + tail(s0 + 1.0)[:, None] * self.d0[None, :] \
                    + tail(s0 + 2.0)[:, None] * (self.d0_2[None, :] / 2.0)
            blocks[a0] = B
        return blocks

    def assemble(self, t, beta: float, with_log: bool = False) -> np.ndarray:
        if beta <= 0.5:
            raise BetaOutOfDomain(f"beta must exceed 1/2, got {beta}")
        level = self.level
        t = _as_t_vector(level, t)
        blocks = self._class_blocks(beta, with_log)
        npts = self.nodes.size
        kappa = level.table.size
        L = np.zeros((2 * kappa * npts, 2 * kappa * npts))
        scalars = np.exp(level.j_values @ t) if level.two_g else np.ones(kappa)
        for e in range(kappa):
            w_e = scalars[e]
            for r in range(level.level):
                dst_coset = level.table.tau_row(r)[e]
                for sign in (1, -1):
                    src = 2 * e + (sign > 0)       # source vertex (e, -sign)
                    dst = 2 * dst_coset + (sign < 0)
                    a0 = self.a0_for[(r, sign)]
                    L[
                        dst * npts:(dst + 1) * npts,
                        src * npts:(src + 1) * npts,
                    ] += w_e * blocks[a0]
        return L

    def leading(self, L: np.ndarray):
        """Perron data (lam, right h, left nu) of the bipartite operator.

        Works on L^2, which is block diagonal over the two sign classes,
        then lifts a one-class Perron vector back to an eigenvector of L.
        """
        cfg = self.cfg
        n = L.shape[0]
        npts = self.nodes.size
        # sign-class masks: vertex 2e (+1) blocks vs 2e+1 (-1) blocks
        plus_mask = np.zeros(n, dtype=bool)
        for v in range(n // npts):
            if v % 2 == 0:
                plus_mask[v * npts:(v + 1) * npts] = True

        def square_perron(M):
            v = np.ones(n)
            lam2_old = 0.0
            for _ in range(5000):
                w = M @ (M @ v)
                nrm = w.max()
                if nrm <= 0 or not np.isfinite(nrm):
                    raise NoConvergence("iteration lost positivity")
                w /= nrm
                lam2 = nrm
                if abs(lam2 - lam2_old) <= cfg.tolerance * max(lam2, 1e-300) \
                        and np.abs(w - v).max() <= 100 * cfg.tolerance:
                    return lam2, w
                lam2_old, v = lam2, w
            raise NoConvergence("power iteration cap reached")

        lam2, v = square_perron(L)
        lam = math.sqrt(lam2)
        v_plus = np.where(plus_mask, v, 0.0)
        h = v_plus + (L @ v_plus) / lam
        u2, u = square_perron(L.T)
        u_plus = np.where(plus_mask, u, 0.0)
        nu = u_plus + (L.T @ u_plus) / lam
        return lam, h, nu


def pressure_collocation(level: LevelData, t, beta: float,
                         cfg: NumericsConfig | None = None,
                         _op: TransferOperator | None = None) -> PressureEstimate:
    """Pressure as log of the leading collocation eigenvalue."""
    cfg = cfg or NumericsConfig()
    op = _op or TransferOperator(level, cfg)
    L = op.assemble(t, beta)
    lam, _, _ = op.leading(L)
    return PressureEstimate(math.log(lam), cfg.provenance("collocation", beta=beta))


def solve_beta(level: LevelData, t, cfg: NumericsConfig | None = None) -> float:
    """Root of P(t, .) = 0, by bracketed Brent iteration."""
    cfg = cfg or NumericsConfig()
    op = TransferOperator(level, cfg)
    evaluated: dict[float, float] = {}

    def P(beta):
        if beta not in evaluated:
            evaluated[beta] = pressure_collocation(level, t, beta, cfg, _op=op).value
        return evaluated[beta]

    lo = max(cfg.beta_min, min(0.8, cfg.beta_max))
    hi = min(cfg.beta_max, 1.3)
    while P(lo) <= 0.0:
        if lo <= cfg.beta_min + 1e-12:
            raise BracketFailure(f"no positive pressure down to beta={lo}: {evaluated}")
        lo = max(cfg.beta_min, lo - 0.15)
    while P(hi) >= 0.0:
        if hi >= cfg.beta_max:
            raise BracketFailure(f"no negative pressure up to beta={hi}: {evaluated}")
        hi = min(cfg.beta_max, hi + 0.5)
    root = brentq(P, lo, hi, xtol=min(cfg.tolerance, 1e-9), rtol=8.9e-16)
    if abs(P(root)) > 10 * max(cfg.tolerance, 1e-12):
        raise BracketFailure(f"residual {P(root)} too large at beta={root}")
    return float(root)


def gibbs_moments(level: LevelData, t, cfg: NumericsConfig | None = None,
                  beta: float | None = None) -> GibbsMoments:
    """Stationary averages of the two potentials at (t, beta_G(t)).

    Computed from left/right Perron vectors by first-order perturbation
    of the leading eigenvalue; when ``self_check`` is on, the same
    quantities are recomputed as finite differences of the pressure.
    """
    cfg = cfg or NumericsConfig()
    t = _as_t_vector(level, t)
    if beta is None:
        beta = solve_beta(level, t, cfg)
    op = TransferOperator(level, cfg)
    L = op.assemble(t, beta)
    lam, h, nu = op.leading(L)
    denom = lam * float(nu @ h)

    L_log = op.assemble(t, beta, with_log=True)
    mean_i = float(nu @ (L_log @ h)) / denom
    if mean_i <= 0:
        raise NoConvergence("nonpositive expansion moment")

    npts = op.nodes.size
    mean_j = np.zeros(level.two_g)
    for i in range(level.two_g):
        scale = np.repeat(np.repeat(level.j_values[:, i], 2), npts)
        mean_j[i] = float(nu @ (L @ (scale * h))) / denom

    if cfg.self_check:
        _check_moments(level, t, beta, cfg, op, mean_j, mean_i)

    alpha = mean_j / mean_i
    return GibbsMoments(mean_j, mean_i, alpha, beta,
                        cfg.provenance("collocation-moments", beta=beta))


def _check_moments(level, t, beta, cfg, op, mean_j, mean_i):
    h = cfg.fd_step
    tol = max(10 * cfg.tolerance, 1e-6)

    def P(tv, bv):
        return pressure_collocation(level, tv, bv, cfg, _op=op).value

    dPdb = (P(t, beta + h) - P(t, beta - h)) / (2 * h)
    if abs(-dPdb - mean_i) > tol * max(1.0, mean_i):
        raise MomentCheckError(
            f"d_beta P = {dPdb} vs -mean_i = {-mean_i} beyond tolerance {tol}"
        )
    for i in range(level.two_g):
        step = np.zeros(level.two_g)
        step[i] = h
        dPdt = (P(t + step, beta) - P(t - step, beta)) / (2 * h)
        if abs(dPdt - mean_j[i]) > tol * max(1.0, abs(mean_j[i])):
            raise MomentCheckError(
                f"d_t{i} P = {dPdt} vs mean_j = {mean_j[i]} beyond tolerance {tol}"
            )


# ---------------------------------------------------------------------------
# cylinder partition sums


def _enumerate_partition_sums(level: LevelData, t, beta, cfg) -> list[float]:
    """Z_1..Z_n by explicit word enumeration with periodic-point weights."""
    t = _as_t_vector(level, t)
    table = level.table
    K = cfg.digit_cutoff
    n = cfg.cylinder_depth
    tJ = level.j_values @ t if level.two_g else np.zeros(table.size)
    z = [0.0] * (n + 1)

    def weight(matrix, depth, sum_tj):
        a, b, c, d = matrix
        tr = a + d if depth % 2 == 0 else a * a + d * d - 2 * b * c
        log_lam = hyperbolic_log_eigenvalue(tr)
        s_n_i = 2.0 * log_lam if depth % 2 == 0 else log_lam
        return math.exp(sum_tj - beta * s_n_i)

    def descend(e, next_digit_sign_options, matrix, depth, sum_tj):
        if depth == n:
            return
        a, b, c, d = matrix
        for sign in next_digit_sign_options:
            for mag in range(1, K + 1):
                k = sign * mag
                # multiply by S*T^k = [[0,-1],[1,k]]
                new = (b, -a + k * b, d, -c + k * d)
                e_next = table.tau(k, e)
                z[depth + 1] += weight(new, depth + 1, sum_tj + tJ[e])
                descend(e_next, (-sign,), new, depth + 1, sum_tj + tJ[e])

    for e in range(table.size):
        descend(e, (1, -1), (1, 0, 0, 1), 0, 0.0)
    return z[1:]


def _grid_partition_sums(level: LevelData, t, beta, cfg) -> list[float]:
    """Z_1..Z_n by depth-iterating cylinder sums on a uniform grid.

    Tail evaluation happens at the branch endpoint (grid value 0); a
    zeta tail with a linear interpolant correction is applied when the
    configuration asks for it.
    """
    t = _as_t_vector(level, t)
    table = level.table
    N = table.level
    K = cfg.digit_cutoff
    G = cfg.grid_points
    y = np.linspace(0.0, 1.0, G)
    dy = y[1] - y[0]
    scalars = np.exp(level.j_values @ t) if level.two_g else np.ones(table.size)

    # per smallest-magnitude class: interp indices/weights and branch weights
    per_a0 = {}
    for a0 in range(1, N + 1):
        mags = np.arange(a0, K + 1, N, dtype=float)
        if mags.size:
            ay = mags[:, None] + y[None, :]
            W = ay ** (-2.0 * beta)
            u = 1.0 / ay
            pos = u / dy
            idx = np.minimum(pos.astype(int), G - 2)
            frac = pos - idx
            per_a0[a0] = (W, idx, frac, mags)
        else:
            per_a0[a0] = (None, None, None, mags)

    def tail_coeffs(a0, mags):
        if cfg.tail_mode != "zeta-tail":
            return None
        a_first = (mags[-1] + N) if mags.size else float(a0)
        q = (a_first + y) / N
        t0 = N ** (-2.0 * beta) * hurwitz_zeta(2.0 * beta, q)
        t1 = N ** (-2.0 * beta - 1.0) * hurwitz_zeta(2.0 * beta + 1.0, q)
        return t0, t1

    tails = {a0: tail_coeffs(a0, per_a0[a0][3]) for a0 in per_a0}

    a0_for = {}
    for r in range(N):
        a0_for[(r, 1)] = r if r > 0 else N
        a0_for[(r, -1)] = (N - r) if r > 0 else N

    num_v = 2 * table.size
    F = np.ones((num_v, G))
    zs = []
    for _ in range(cfg.cylinder_depth):
        F_new = np.zeros_like(F)
        for e in range(table.size):
            for r in range(N):
                dst_coset = table.tau_row(r)[e]
                for sign in (1, -1):
                    src = 2 * e + (sign > 0)
                    dst = 2 * dst_coset + (sign < 0)
                    a0 = a0_for[(r, sign)]
                    W, idx, frac, mags = per_a0[a0]
                    contrib = np.zeros(G)
                    if W is not None:
                        f_interp = F[src][idx] * (1 - frac) + F[src][idx + 1] * frac
                        contrib += (W * f_interp).sum(axis=0)
                    if tails[a0] is not None:
                        t0, t1 = tails[a0]
                        f0 = F[src][0]
                        fp0 = (F[src][1] - F[src][0]) / dy
                        contrib += t0 * f0 + t1 * fp0
                    F_new[dst] += scalars[e] * contrib
        F = F_new
        zs.append(float(F[:, 0].sum()))
    return zs


def pressure_cylinder(level: LevelData, t, beta: float,
                      cfg: NumericsConfig | None = None,
                      mode: str = "auto") -> PressureEstimate:
    """Finite-depth cylinder-sum estimate of the pressure.

    The reported value is the quotient estimate log(Z_n / Z_{n-1}),
    which agrees with (1/n) log Z_n at depth 1 and converges to the
    same limit without the subexponential prefactor; the raw quantity
    is recorded in the provenance.  Exact per-word enumeration is used
    when the admissible word count fits the configured limit, otherwise
    the grid iteration takes over.
    """
    cfg = cfg or NumericsConfig()
    if beta <= 0.5:
        raise BetaOutOfDomain(f"beta must exceed 1/2, got {beta}")
    n = cfg.cylinder_depth
    word_count = 2 * level.table.size * cfg.digit_cutoff ** n
    if mode == "auto":
        mode = "enumerate" if word_count <= cfg.enum_limit else "grid"
    if mode == "enumerate":
        if word_count > 50 * cfg.enum_limit:
            raise ValueError(f"enumeration of ~{word_count} words refused")
        zs = _enumerate_partition_sums(level, t, beta, cfg)
    elif mode == "grid":
        zs = _grid_partition_sums(level, t, beta, cfg)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    raw = math.log(zs[-1]) / n
    value = math.log(zs[-1]) - (math.log(zs[-2]) if n > 1 else 0.0)
    prov = cfg.provenance("cylinder-" + mode, beta=beta,
                          raw_rate=raw, partition_sums=zs)
    return PressureEstimate(value, prov)


def beta_hessian(level: LevelData, t, cfg: NumericsConfig | None = None,
                 step: float = 2e-3) -> np.ndarray:
    """Finite-difference Hessian of beta_G: central differences of alpha(t)."""
    cfg = cfg or NumericsConfig()
    t = _as_t_vector(level, t)
    d = level.two_g
    H = np.zeros((d, d))
    for i in range(d):
        ei = np.zeros(d)
        ei[i] = step
        ap = gibbs_moments(level, t + ei, cfg).alpha
        am = gibbs_moments(level, t - ei, cfg).alpha
        H[:, i] = (ap - am) / (2 * step)
    return (H + H.T) / 2.0
