"""Detection-estimation loop on a compressed DML cost.

Starting from an empty direction vector, a chi-squared test on the residual
cost decides whether another component is present; if so, the extended
beamformer proposes it and MVP (Gauss-Newton on the compressed cost)
refines all components jointly. ``estimate_known_k`` runs the same
add-then-refine rounds a fixed number of times without the test.

Both loops accept either compression kind; the cost is ``corr_cost``.
"""

import logging

import numpy as np
import scipy.linalg as sl

from ..config.settings import DetectorConfig, MvpOptions, SearchConfig
from ..domain.entities import CorrSet, Decision, EstimationResult, MvpState, TraceEntry
from ..domain.enums import StepKind
from ..numerics import SingularMatrixError, adjoint, chi2_inv_cdf, thin_qr
from .array_model import GAMMA_TOL, as_gamma, check_distinct, steering_derivative, steering_matrix
from .cost import corr_cost
from .search1d import MinimaShortageError, extended_beamformer_grid, locate_minima

logger = logging.getLogger(__name__)


class MaxComponentsError(RuntimeError):
    """Raised when the test still asks for a component with K = M - 1 already estimated."""

    def __init__(self, message: str, partial: EstimationResult) -> None:
        """Initialize with the result accumulated so far."""
        super().__init__(message)
        self.partial = partial


def detection_threshold(det: DetectorConfig, n_sensors: int, k: int, n_idx: int) -> float:
    """Return A = (sigma^2 / 2) F^{-1}(1 - P_FA; 2 (M - K) n_idx).

    Raises:
        ValueError: If K >= M or n_idx < 1.
    """
    if not 0 <= k < n_sensors:
        raise ValueError(f"K must lie in [0, {n_sensors - 1}], got {k}")
    if n_idx < 1:
        raise ValueError(f"n_idx must be >= 1, got {n_idx}")
    dof = 2 * (n_sensors - k) * n_idx
    return 0.5 * det.noise_var * chi2_inv_cdf(1.0 - det.p_fa, dof)


def detect_step(corr: CorrSet, gamma, det: DetectorConfig, search: SearchConfig) -> Decision:
    """Test the residual cost against the threshold and propose a new component if it is exceeded.

    With K = M - 1 an exceeded test returns ``stop=False`` without a candidate;
    the caller decides what to do at the model-order limit.
    """
    gamma = as_gamma(gamma)
    cost = corr_cost(corr, gamma)
    threshold = detection_threshold(det, corr.n_sensors, gamma.size, corr.cfg.n_indices)
    if cost < threshold:
        return Decision(stop=True, cost=cost, threshold=threshold, reason="below threshold")
    if gamma.size >= corr.n_sensors - 1:
        return Decision(stop=False, cost=cost, threshold=threshold, reason="model order limit")

    spectrum = extended_beamformer_grid(corr, gamma, search)
    try:
        (gamma_new, _), *_ = locate_minima(spectrum, 1, search)
    except MinimaShortageError:
        logger.debug("Extended beamformer has no interior minimum; treating as no detectable component")
        return Decision(stop=True, cost=cost, threshold=threshold, reason="no minimum")
    if gamma.size and np.min(np.abs(gamma - gamma_new)) < GAMMA_TOL:
        return Decision(stop=True, cost=cost, threshold=threshold, reason="candidate coincides with an estimate")
    return Decision(stop=False, cost=cost, threshold=threshold, gamma_new=gamma_new)


def mvp_gradient_hessian(corr: CorrSet, gamma) -> tuple[np.ndarray, np.ndarray]:
    """Return the gradient g and Hessian approximation H of the compressed cost.

    g = -2 Re diag sum_p A^+ R_p P_perp D
    H =  2 Re sum_p (D^H P_perp D)^T o (A^+ R_p A^{+H})

    A^+ = Rfac^{-1} Q1^H and P_perp D = D - Q1 (Q1^H D); neither A^+ nor P_perp is formed.

    Raises:
        SingularMatrixError: If a steering matrix is rank deficient.
    """
    gamma = as_gamma(gamma)
    k = gamma.size
    grad = np.zeros(k)
    hess = np.zeros((k, k))
    if k == 0:
        return grad, hess

    steering = steering_matrix(corr.cfg, corr.abscissas, gamma)
    derivs = steering_derivative(corr.cfg, corr.abscissas, gamma)
    for a, d, r in zip(steering, derivs, corr.matrices, strict=True):
        factors = thin_qr(a)
        q1h = adjoint(factors.q1)
        perp_d = d - factors.q1 @ (q1h @ d)
        # A^+ R_p P_perp D
        pinv_r_perp_d = factors.solve_rfac(q1h @ r @ perp_d)
        grad -= 2.0 * np.real(np.diag(pinv_r_perp_d))
        # A^+ R_p A^{+H} = Rfac^{-1} (Q1^H R_p Q1) Rfac^{-H}
        inner = factors.solve_rfac(q1h @ r @ factors.q1)
        pinv_r_pinvh = factors.solve_rfac(adjoint(inner))
        hess += 2.0 * np.real((adjoint(d) @ perp_d).T * pinv_r_pinvh)
    return grad, 0.5 * (hess + hess.T)


def _newton_direction(grad: np.ndarray, hess: np.ndarray, opts: MvpOptions) -> tuple[np.ndarray, bool]:
    """Solve H x = g by Cholesky, adding lambda I when H is not positive definite."""
    try:
        return sl.cho_solve(sl.cho_factor(hess), grad), False
    except sl.LinAlgError:
        pass
    k = grad.size
    lam = opts.reg_scale * max(abs(np.trace(hess)) / k, np.finfo(float).tiny)
    for _ in range(12):
        try:
            return sl.cho_solve(sl.cho_factor(hess + lam * np.eye(k)), grad), True
        except sl.LinAlgError:
            lam *= 10.0
    logger.debug("Hessian could not be regularized; using a scaled gradient step")
    return grad / max(np.abs(hess).max(), 1.0), True


def _admissible(gamma: np.ndarray) -> bool:
    if np.any(np.abs(gamma) > 1.0):
        return False
    return gamma.size < 2 or float(np.min(np.diff(np.sort(gamma)))) >= GAMMA_TOL


def mvp_refine(corr: CorrSet, gamma_init, opts: MvpOptions) -> MvpState:
    """Refine a direction vector by the MVP iteration gamma <- gamma - mu H^{-1} g.

    mu starts at 1 on every iteration and is halved until the cost decreases.
    Candidates outside [-1, 1], with coincident entries, or with a singular
    steering matrix are rejected like a cost increase.

    Raises:
        ValueError: If the initial vector has coincident entries.
        SingularMatrixError: If the initial steering matrices are rank deficient.
    """
    gamma = check_distinct(gamma_init)
    cost = corr_cost(corr, gamma)
    state = MvpState(gamma=gamma, alpha=0, cost=cost, costs=[cost])
    if gamma.size == 0:
        return state
    energy = abs(corr.total_trace)

    for alpha in range(1, opts.max_iter + 1):
        grad, hess = mvp_gradient_hessian(corr, state.gamma)
        direction, regularized = _newton_direction(grad, hess, opts)
        if regularized:
            logger.debug(f"MVP iteration {alpha}: Hessian regularized")
            state.regularized = True

        mu = 1.0
        accepted = False
        for _ in range(opts.max_halvings):
            candidate = state.gamma - mu * direction
            if _admissible(candidate):
                try:
                    candidate_cost = corr_cost(corr, candidate)
                except SingularMatrixError:
                    candidate_cost = np.inf
                if candidate_cost < state.cost:
                    accepted = True
                    break
            mu /= 2.0
        if not accepted:
            logger.debug(f"MVP iteration {alpha}: no decrease found, stopping at cost {state.cost:.6e}")
            break

        decrease = state.cost - candidate_cost
        step = float(np.max(np.abs(mu * direction)))
        previous = state.cost
        state.gamma, state.cost, state.mu, state.alpha = candidate, candidate_cost, mu, alpha
        state.costs.append(candidate_cost)
        logger.debug(f"MVP iteration {alpha}: cost {candidate_cost:.6e}, mu {mu:g}, step {step:.3e}")
        if decrease < opts.rtol * previous + opts.atol * energy or step < opts.min_step:
            break
    else:
        state.converged = False
        logger.debug(f"MVP reached {opts.max_iter} iterations without meeting the tolerance")
    return state


def _refine_round(
    corr: CorrSet, gamma: np.ndarray, gamma_new: float, opts: MvpOptions, trace: list[TraceEntry]
) -> tuple[np.ndarray, bool]:
    state = mvp_refine(corr, np.append(gamma, gamma_new), opts)
    trace.append(TraceEntry(StepKind.REFINE, state.k, state.alpha, state.cost))
    return state.gamma, state.converged


def run_detection_estimation(
    corr: CorrSet, det: DetectorConfig, search: SearchConfig, opts: MvpOptions
) -> EstimationResult:
    """Alternate detection and MVP refinement from an empty vector until the test stops.

    Raises:
        MaxComponentsError: If the test asks for another component with K = M - 1.
    """
    gamma = np.zeros(0)
    trace: list[TraceEntry] = []
    converged = True
    while True:
        decision = detect_step(corr, gamma, det, search)
        trace.append(TraceEntry(StepKind.DETECT, gamma.size, 0, decision.cost, decision.threshold, not decision.stop))
        if decision.stop:
            logger.debug(f"Detection stopped at K={gamma.size}: {decision.reason}")
            return EstimationResult(gamma, trace, converged)
        if gamma.size >= corr.n_sensors - 1:
            raise MaxComponentsError(
                f"Test still exceeded with K={gamma.size} components on {corr.n_sensors} sensors",
                partial=EstimationResult(gamma, trace, False),
            )
        gamma, ok = _refine_round(corr, gamma, decision.gamma_new, opts, trace)
        converged = converged and ok


def estimate_known_k(
    corr: CorrSet, k: int, search: SearchConfig, opts: MvpOptions, det: DetectorConfig | None = None
) -> EstimationResult:
    """Run exactly ``k`` add-then-refine rounds without the detection test.

    ``det`` is only used to record the threshold in the trace.

    Raises:
        ValueError: If k is outside [0, M).
        MinimaShortageError: If the extended beamformer runs out of minima before K components.
    """
    if not 0 <= k < corr.n_sensors:
        raise ValueError(f"K must lie in [0, {corr.n_sensors - 1}], got {k}")
    gamma = np.zeros(0)
    trace: list[TraceEntry] = []
    converged = True
    for _ in range(k):
        threshold = None if det is None else detection_threshold(det, corr.n_sensors, gamma.size, corr.cfg.n_indices)
        (gamma_new, _), *_ = locate_minima(extended_beamformer_grid(corr, gamma, search), 1, search)
        trace.append(TraceEntry(StepKind.DETECT, gamma.size, 0, corr_cost(corr, gamma), threshold))
        gamma, ok = _refine_round(corr, gamma, gamma_new, opts, trace)
        converged = converged and ok
    return EstimationResult(gamma, trace, converged)
