"""Condition contrasts, logistic regression and mediation at the network level."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from scipy import stats
from scipy.special import expit

from pyswbnet.exceptions import (
    ConvergenceError,
    InvalidArgument,
    SingularDesign,
    UndefinedInput,
)
from pyswbnet.models import LogisticFit, MediationResult, PermutationResult, WelchResult

_LOGGER = logging.getLogger(__name__)

MIN_PERMUTATIONS = 1000
MIN_BOOTSTRAP = 1000
MIN_MEDIATION_CLUSTERS = 10
IRLS_TOLERANCE = 1e-10
IRLS_MAX_ITERATIONS = 100
# |coefficient| beyond this means the likelihood has no finite maximum
SEPARATION_BOUND = 25.0
UNSTABLE_TOTAL = 1e-6
_PERMUTATION_CHUNK = 1000


@dataclass(kw_only=True, frozen=True)
class ClusteredSample:
    """One aggregate value per network of a condition."""

    values: tuple[float, ...]
    label: str = ""

    @classmethod
    def of(
        cls, values: Sequence[float] | npt.ArrayLike, label: str = ""
    ) -> ClusteredSample:
        """Build a sample from any sequence of numbers."""
        array = np.asarray(values, dtype=float)
        return cls(values=tuple(float(v) for v in array), label=label)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def mean(self) -> float:
        """Return the mean over clusters."""
        return float(np.mean(self.values))


def _values(sample: ClusteredSample | Sequence[float]) -> npt.NDArray[np.float64]:
    if isinstance(sample, ClusteredSample):
        return np.asarray(sample.values, dtype=float)
    return np.asarray(sample, dtype=float)


def permutation_test(
    a: ClusteredSample | Sequence[float],
    b: ClusteredSample | Sequence[float],
    iterations: int,
    rng: np.random.Generator,
) -> PermutationResult:
    """Two-sided test of mean(a) - mean(b) by relabeling clusters.

    p = (1 + #{|T_perm| >= |T_obs|}) / (1 + iterations).
    """
    first, second = _values(a), _values(b)
    if first.size < 2 or second.size < 2:
        raise UndefinedInput(
            f"Permutation test needs at least 2 clusters per condition, "
            f"got {first.size} and {second.size}"
        )
    if iterations < MIN_PERMUTATIONS:
        raise InvalidArgument(
            f"Permutation test needs at least {MIN_PERMUTATIONS} iterations, "
            f"got {iterations}"
        )

    pooled = np.concatenate([first, second])
    split = first.size
    observed = first.mean() - second.mean()
    # ties within rounding noise of the observed statistic count as extreme
    tolerance = 1e-10 * float(np.ptp(pooled))

    extreme = 0
    remaining = iterations
    while remaining:
        chunk = min(remaining, _PERMUTATION_CHUNK)
        shuffled = rng.permuted(np.tile(pooled, (chunk, 1)), axis=1)
        statistics = shuffled[:, :split].mean(axis=1) - shuffled[:, split:].mean(axis=1)
        at_least = np.abs(statistics) >= abs(observed) - tolerance
        extreme += int(np.count_nonzero(at_least))
        remaining -= chunk

    return PermutationResult(
        difference=float(observed),
        p_value=(1 + extreme) / (1 + iterations),
        iterations=iterations,
    )


def welch_t(
    a: ClusteredSample | Sequence[float], b: ClusteredSample | Sequence[float]
) -> WelchResult:
    """Unequal-variance t test with Welch-Satterthwaite degrees of freedom."""
    first, second = _values(a), _values(b)
    if first.size < 2 or second.size < 2:
        raise UndefinedInput("Welch t test needs at least 2 values per group")
    if np.var(first, ddof=1) == 0 and np.var(second, ddof=1) == 0:
        raise UndefinedInput(
            "Welch t test needs positive variance in at least one group"
        )
    result = stats.ttest_ind(first, second, equal_var=False)
    return WelchResult(
        t=float(result.statistic), df=float(result.df), p_value=float(result.pvalue)
    )


type FloatArray = npt.NDArray[np.float64]


def _log_likelihood(design: FloatArray, outcome: FloatArray, beta: FloatArray) -> float:
    eta = design @ beta
    return float(np.sum(outcome * eta - np.logaddexp(0.0, eta)))


def logistic_fit(
    outcome: Sequence[int] | npt.ArrayLike,
    covariates: npt.ArrayLike,
    names: Sequence[str] | None = None,
) -> LogisticFit:
    """Fit a logit model by iteratively reweighted least squares.

    `covariates` is the full design matrix; include a column of ones for an
    intercept. Steps that lower the log-likelihood are halved. The
    log-likelihood of every accepted iterate is kept in `likelihood_trace`.
    """
    y = np.asarray(outcome, dtype=float)
    design = np.asarray(covariates, dtype=float)
    if design.ndim == 1:
        design = design.reshape(-1, 1)
    observations, width = design.shape
    labels = tuple(names) if names is not None else tuple(f"x{i}" for i in range(width))
    if len(labels) != width:
        raise InvalidArgument(f"Got {len(labels)} names for {width} covariates")
    if y.shape != (observations,):
        raise InvalidArgument(f"Got {y.size} outcomes for {observations} rows")
    if not np.all((y == 0) | (y == 1)):
        raise InvalidArgument("Logistic outcome must be binary (0 or 1)")
    if y.min() == y.max():
        raise UndefinedInput(
            "Logistic fit needs at least one observation per outcome class"
        )
    if np.linalg.matrix_rank(design) < width:
        raise SingularDesign(f"Design matrix with columns {labels} is rank deficient")

    beta = np.zeros(width)
    likelihood = _log_likelihood(design, y, beta)
    trace = [likelihood]
    iteration = 0
    for iteration in range(1, IRLS_MAX_ITERATIONS + 1):
        mu = expit(design @ beta)
        weights = mu * (1.0 - mu)
        information = design.T @ (design * weights[:, None])
        score = design.T @ (y - mu)
        try:
            step = np.linalg.solve(information, score)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError(
                labels[int(np.argmax(np.abs(beta)))],
                "Logistic fit diverged: information matrix became singular",
            ) from exc

        candidate = beta + step
        candidate_likelihood = _log_likelihood(design, y, candidate)
        halvings = 0
        while candidate_likelihood < likelihood and halvings < 50:
            step /= 2
            candidate = beta + step
            candidate_likelihood = _log_likelihood(design, y, candidate)
            halvings += 1
        if candidate_likelihood < likelihood:
            _LOGGER.warning("IRLS step halving exhausted at iteration %s", iteration)
            break

        change = float(np.max(np.abs(candidate - beta)))
        beta, likelihood = candidate, candidate_likelihood
        trace.append(likelihood)
        if change < IRLS_TOLERANCE:
            break

    if np.any(np.abs(beta) > SEPARATION_BOUND):
        raise ConvergenceError(
            labels[int(np.argmax(np.abs(beta)))],
            "Logistic fit diverged, outcome is perfectly separated",
        )

    mu = expit(design @ beta)
    information = design.T @ (design * (mu * (1.0 - mu))[:, None])
    try:
        covariance = np.linalg.inv(information)
    except np.linalg.LinAlgError as exc:
        raise SingularDesign("Observed information matrix is singular") from exc
    errors = np.sqrt(np.diag(covariance))
    p_values = 2 * stats.norm.sf(np.abs(beta / errors))
    _LOGGER.debug("Logistic fit converged after %s iterations", iteration)
    return LogisticFit(
        names=labels,
        coefficients=tuple(float(v) for v in beta),
        standard_errors=tuple(float(v) for v in errors),
        p_values=tuple(float(v) for v in p_values),
        log_likelihood=likelihood,
        iterations=iteration,
        likelihood_trace=tuple(trace),
    )


def _effects(
    x: npt.NDArray[np.float64], z: npt.NDArray[np.float64], y: npt.NDArray[np.float64]
) -> tuple[float, float, float, float]:
    """Return (a, b, direct, total) from the three linear fits."""
    ones = np.ones_like(x)
    condition_only = np.column_stack([ones, x])
    with_mediator = np.column_stack([ones, x, z])
    a = np.linalg.lstsq(condition_only, z, rcond=None)[0][1]
    total = np.linalg.lstsq(condition_only, y, rcond=None)[0][1]
    _, direct, b = np.linalg.lstsq(with_mediator, y, rcond=None)[0]
    return float(a), float(b), float(direct), float(total)


def _check_mediation_inputs(
    x: npt.NDArray[np.float64], z: npt.NDArray[np.float64], y: npt.NDArray[np.float64]
) -> None:
    if np.var(x) == 0:
        raise UndefinedInput("Condition indicator has zero variance")
    if np.var(z) == 0:
        raise UndefinedInput("Mediator has zero variance")
    if np.var(y) == 0:
        raise UndefinedInput("Outcome has zero variance")
    ones = np.ones_like(x)
    if np.linalg.matrix_rank(np.column_stack([ones, x, z])) < 3:
        raise UndefinedInput("Mediator is collinear with the condition")
    on_mediator = np.column_stack([ones, z])
    residual = y - on_mediator @ np.linalg.lstsq(on_mediator, y, rcond=None)[0]
    if np.max(np.abs(residual)) <= 1e-9 * max(1.0, float(np.max(np.abs(y)))):
        raise UndefinedInput("Outcome is collinear with the mediator")


def mediate(
    x: Sequence[float] | npt.ArrayLike,
    z: Sequence[float] | npt.ArrayLike,
    y: Sequence[float] | npt.ArrayLike,
    bootstrap: int,
    rng: np.random.Generator,
) -> MediationResult:
    """Decompose the effect of a binary condition x on y through mediator z.

    Clusters are resampled within each condition so every bootstrap sample
    keeps both arms.
    """
    condition = np.asarray(x, dtype=float)
    mediator = np.asarray(z, dtype=float)
    outcome = np.asarray(y, dtype=float)
    clusters = condition.size
    if mediator.size != clusters or outcome.size != clusters:
        raise InvalidArgument("x, z and y need one value per cluster")
    if clusters < MIN_MEDIATION_CLUSTERS:
        raise UndefinedInput(
            f"Mediation needs at least {MIN_MEDIATION_CLUSTERS} clusters, "
            f"got {clusters}"
        )
    if bootstrap < MIN_BOOTSTRAP:
        raise InvalidArgument(
            f"Mediation needs at least {MIN_BOOTSTRAP} bootstrap samples, "
            f"got {bootstrap}"
        )
    _check_mediation_inputs(condition, mediator, outcome)

    a, b, direct, total = _effects(condition, mediator, outcome)
    indirect = a * b

    arms = [np.flatnonzero(condition == level) for level in np.unique(condition)]
    resampled = np.empty(bootstrap)
    for draw in range(bootstrap):
        rows = np.concatenate(
            [rng.choice(arm, size=arm.size, replace=True) for arm in arms]
        )
        boot_a, boot_b, _, _ = _effects(condition[rows], mediator[rows], outcome[rows])
        resampled[draw] = boot_a * boot_b

    ci_low, ci_high = np.percentile(resampled, [2.5, 97.5])
    below = int(np.count_nonzero(resampled <= 0))
    above = int(np.count_nonzero(resampled >= 0))
    p_value = min(1.0, 2 * min(1 + below, 1 + above) / (1 + bootstrap))

    unstable = abs(total) < UNSTABLE_TOTAL
    if unstable:
        _LOGGER.warning(
            "Total effect %s is near zero, proportion mediated is unstable", total
        )
    return MediationResult(
        total=total,
        direct=direct,
        indirect=indirect,
        a=a,
        b=b,
        proportion=indirect / total if total != 0 else None,
        ci_low=float(ci_low),
        ci_high=float(ci_high),
        p_value=p_value,
        clusters=clusters,
        bootstrap=bootstrap,
        unstable=unstable,
    )
