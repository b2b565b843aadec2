"""Bayesian dual-criterion design for a single-arm binary endpoint.

The responder count is binomial and the response rate carries a conjugate
Beta prior. GO requires both criteria at the final analysis:

* statistical: posterior probability that the ORR is at or above the null
  value reaches ``sig_prob`` (e.g. 0.95);
* clinical: posterior median ORR reaches ``decision_orr``.

Both criteria are monotone in the responder count, so each has a smallest
qualifying count; the gap between the two boundaries is the inconclusive
zone. Rates are proportions throughout (0.075, never 7.5).
"""

from __future__ import annotations

from dataclasses import dataclass

from .distributions import (
    BetaParams,
    beta_cdf,
    beta_quantile,
    binomial_tail,
    check_open_probability,
)
from .outcomes import Decision, InfeasibleDesignError, OperatingCharacteristics

DEFAULT_N_MAX = 1000


@dataclass(frozen=True)
class DualCriterionBinaryDesign:
    prior: BetaParams
    null_orr: float
    sig_prob: float
    decision_orr: float
    n: int

    def __post_init__(self):
        check_open_probability(self.null_orr, "null_orr")
        check_open_probability(self.decision_orr, "decision_orr")
        if not 0.5 < self.sig_prob < 1.0:
            raise ValueError(f"sig_prob must lie in (0.5, 1), got {self.sig_prob}")
        if self.decision_orr <= self.null_orr:
            raise ValueError(
                f"decision_orr must exceed null_orr, got "
                f"{self.decision_orr} <= {self.null_orr}"
            )
        if self.n < 1 or self.n != int(self.n):
            raise ValueError(f"n must be a positive integer, got {self.n}")


@dataclass(frozen=True)
class PosteriorSummary:
    """Conjugate posterior after r responders, with the two decision metrics."""

    posterior: BetaParams
    prob_positive: float
    median: float


def prior_from_mean(mean: float, b: float = 1.0) -> BetaParams:
    """Beta prior with the given mean and second shape parameter b."""
    mean = check_open_probability(mean, "mean")
    if not b > 0.0:
        raise ValueError(f"b must be positive, got {b}")
    return BetaParams(a=b * mean / (1.0 - mean), b=b)


def _check_responders(design: DualCriterionBinaryDesign, r: int) -> int:
    if r != int(r) or not 0 <= r <= design.n:
        raise ValueError(f"responder count must lie in [0, {design.n}], got {r}")
    return int(r)


def _posterior(prior: BetaParams, n: int, r: int) -> BetaParams:
    return BetaParams(a=prior.a + r, b=prior.b + n - r)


def _significant(prior: BetaParams, null_orr: float, sig_prob: float, n: int, r: int) -> bool:
    return 1.0 - beta_cdf(_posterior(prior, n, r), null_orr) >= sig_prob


def _relevant(prior: BetaParams, decision_orr: float, n: int, r: int) -> bool:
    # median >= decision_orr is equivalent to CDF(decision_orr) <= 1/2,
    # which avoids a quantile inversion in the boundary scans.
    return beta_cdf(_posterior(prior, n, r), decision_orr) <= 0.5


def posterior_summary(design: DualCriterionBinaryDesign, r: int) -> PosteriorSummary:
    """Posterior shape, probability of a positive effect, and median ORR."""
    r = _check_responders(design, r)
    post = _posterior(design.prior, design.n, r)
    return PosteriorSummary(
        posterior=post,
        prob_positive=1.0 - beta_cdf(post, design.null_orr),
        median=beta_quantile(post, 0.5),
    )


def statistical_boundary(design: DualCriterionBinaryDesign) -> int | None:
    """Smallest responder count meeting the statistical criterion alone."""
    for r in range(design.n + 1):
        if _significant(design.prior, design.null_orr, design.sig_prob, design.n, r):
            return r
    return None


def clinical_boundary(design: DualCriterionBinaryDesign) -> int | None:
    """Smallest responder count meeting the clinical criterion alone."""
    for r in range(design.n + 1):
        if _relevant(design.prior, design.decision_orr, design.n, r):
            return r
    return None


def min_responders(design: DualCriterionBinaryDesign) -> int | None:
    """Smallest responder count meeting both criteria; None if unreachable."""
    stat = statistical_boundary(design)
    clin = clinical_boundary(design)
    if stat is None or clin is None:
        return None
    return max(stat, clin)


def decide_binary(design: DualCriterionBinaryDesign, r: int) -> Decision:
    """Classify an observed responder count. Both inequalities are inclusive."""
    r = _check_responders(design, r)
    return Decision.from_criteria(
        significant=_significant(
            design.prior, design.null_orr, design.sig_prob, design.n, r
        ),
        relevant=_relevant(design.prior, design.decision_orr, design.n, r),
    )


def min_sample_size_grid(
    prior: BetaParams,
    null_orr: float,
    sig_prob: float,
    decision_orr: float,
    n_max: int = DEFAULT_N_MAX,
) -> int:
    """Smallest n from which the clinical criterion implies the statistical one.

    Scans every size up to ``n_max`` (discreteness makes the implication
    non-monotone in n, so a first-hit search would be wrong) and returns
    the smallest n such that the implication holds at n and at every
    larger size up to ``n_max``.
    """
    check_open_probability(null_orr, "null_orr")
    check_open_probability(sig_prob, "sig_prob")
    check_open_probability(decision_orr, "decision_orr")
    if decision_orr <= null_orr:
        raise ValueError("decision_orr must exceed null_orr")
    if n_max < 1 or n_max != int(n_max):
        raise ValueError(f"n_max must be a positive integer, got {n_max}")
    last_failure = 0
    r_start = 0
    for n in range(1, n_max + 1):
        # The clinical boundary never decreases as n grows (extra
        # non-responders only pull the posterior down), so resume the
        # scan from the previous boundary.
        r_clin = None
        for r in range(r_start, n + 1):
            if _relevant(prior, decision_orr, n, r):
                r_clin = r
                break
        if r_clin is None:
            last_failure = n
            continue
        r_start = r_clin
        if not _significant(prior, null_orr, sig_prob, n, r_clin):
            last_failure = n
    if last_failure == n_max:
        raise InfeasibleDesignError(
            f"no conclusive sample size at or below n_max={n_max}"
        )
    return last_failure + 1


def oc_binary(design: DualCriterionBinaryDesign, true_orr: float) -> OperatingCharacteristics:
    """Exact operating characteristics under a true response rate."""
    true_orr = check_open_probability(true_orr, "true_orr")
    stat = statistical_boundary(design)
    clin = clinical_boundary(design)
    n = design.n
    unreachable = n + 1
    stat = unreachable if stat is None else stat
    clin = unreachable if clin is None else clin
    lo, hi = min(stat, clin), max(stat, clin)
    p_go = binomial_tail(n, true_orr, hi)
    p_nogo = 1.0 - binomial_tail(n, true_orr, lo)
    p_inconclusive = max(0.0, 1.0 - p_go - p_nogo)
    return OperatingCharacteristics(
        true_effect=true_orr, p_go=p_go, p_nogo=p_nogo, p_inconclusive=p_inconclusive
    )
