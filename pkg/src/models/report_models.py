from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, model_validator

from config.settings import settings
from src.utils.errors import CapExceededError, InvalidConfigError

SUITE_NAMES = (
    "jacobi",
    "lemma-compute",
    "a-basis",
    "pi-hom",
    "glmn-jacobi",
    "pi3-transport",
    "kac-rep",
    "aw-axioms",
    "omega-recurrence",
    "omega-reduction",
    "annihilation",
    "cover",
    "pi2-hom",
    "d-abelian",
)

EXHAUSTIVE_SUITES = frozenset(
    {
        "jacobi",
        "lemma-compute",
        "a-basis",
        "pi-hom",
        "glmn-jacobi",
        "pi3-transport",
        "omega-recurrence",
        "omega-reduction",
        "pi2-hom",
        "d-abelian",
    }
)


class RunConfig(BaseModel):
    """Model for the parameters of one CLI run."""

    m: int = Field(default=1, ge=0, description="Number of even variables")
    n: int = Field(default=1, ge=0, description="Number of odd variables")
    degree: int = Field(
        default=settings.default_degree, ge=0, description="Degree bound |alpha| + |I| for exhaustive suites"
    )
    window: int = Field(default=settings.default_window, ge=0, description="Window half-width for infinite factors")
    rmax: int = Field(default=settings.default_rmax, ge=0, description="Largest omega order searched")
    seed: int = Field(default=settings.default_seed, ge=0, description="Seed for sampled suites")
    samples: int = Field(default=500, ge=1, description="Samples drawn by sampled suites")
    suite: Optional[str] = Field(default=None, description="Selected verification suite")
    workers: int = Field(default=settings.workers, ge=1, description="Worker threads for suite dispatch")
    out: Optional[str] = Field(default=None, description="Output file name inside the report directory")

    @model_validator(mode="after")
    def check_ranges(self) -> "RunConfig":
        if self.m == 0 and self.n == 0:
            raise InvalidConfigError("(m, n) = (0, 0) is not allowed")
        if self.n > settings.odd_cap:
            raise CapExceededError(f"n = {self.n} exceeds the cap {settings.odd_cap}")
        if self.suite is not None and self.suite not in SUITE_NAMES:
            raise InvalidConfigError(f"unknown suite '{self.suite}'")
        if self.suite in EXHAUSTIVE_SUITES and max(self.m, self.n) > settings.exhaustive_cap:
            raise CapExceededError(
                f"exhaustive suite {self.suite} needs m, n <= {settings.exhaustive_cap}"
            )
        return self


class IdentityResult(BaseModel):
    """Model for one checked identity instance."""

    identity: str = Field(default="", description="Identity family name")
    parameters: Dict[str, Any] = Field(default_factory=dict, description="Re-runnable parameters")
    status: str = Field(default="pass", description="pass, fail or skip")
    elapsed: Optional[float] = Field(default=None, description="Seconds spent, when timings are on")
    counterexample: Optional[Dict[str, Any]] = Field(
        default=None, description="Failure payload with the sides that disagree"
    )


class Report(BaseModel):
    """Model for the result of a verification suite."""

    suite: str = Field(default="", description="Suite name")
    parameter_ranges: Dict[str, Any] = Field(default_factory=dict, description="Ranges the suite covered")
    totals: Dict[str, int] = Field(default_factory=dict, description="Counts per status")
    results: List[IdentityResult] = Field(default_factory=list, description="Per-instance results in generation order")
    counterexample: Optional[IdentityResult] = Field(
        default=None, description="First failure in shrink order"
    )
    elapsed: Optional[float] = Field(default=None, description="Seconds for the whole suite")
    passed: bool = Field(default=True, description="True iff no instance failed")


class WeightDimRow(BaseModel):
    """Model for one row of a weight dimension table."""

    weight: List[str] = Field(default_factory=list, description="Weight entries as strings")
    dim: int = Field(default=0, description="Dimension of the weight space")
    reliable: bool = Field(default=True, description="False when truncation may affect the value")


class BoundednessCertificate(BaseModel):
    """Model for the boundedness check of a tensor module."""

    N: int = Field(default=1, description="Bound on the weight multiplicities of V2")
    dim_v1: int = Field(default=1, description="Dimension of V1")
    bound: int = Field(default=0, description="2^{mn} N dim V1")
    pair_count: int = Field(default=1, description="Number of (P-weight, M-weight) pairs per F-weight")
    observed_max: int = Field(default=0, description="Largest reliable F weight dimension")
    within_bound: bool = Field(default=True, description="observed_max <= bound")
    within_pair_bound: bool = Field(default=True, description="observed_max <= pair_count * bound, the verdict criterion")
    module_observed_max: int = Field(default=0, description="Largest complete M weight dimension")
    reliable_weights: int = Field(default=0, description="Number of reliable F weights")
    verdict: str = Field(default="bounded", description="bounded or violated")
    meaningful: bool = Field(default=False, description="True when M is a simple top L(V1 (x) V2)")


class AnnihilationReport(BaseModel):
    """Model for the omega annihilation search."""

    r_range: List[int] = Field(default_factory=list, description="Searched orders [0, r_max]")
    minimal_r: Optional[int] = Field(default=None, description="Smallest order annihilating every sample")
    annihilates: Dict[int, bool] = Field(default_factory=dict, description="Per-order verdict")
    witness: Optional[Dict[str, Any]] = Field(
        default=None, description="A nonzero sample at minimal_r - 1"
    )
    samples: int = Field(default=0, description="Number of omega parameter samples")
    vectors: int = Field(default=0, description="Number of module vectors tried")
    clean_pairs: Dict[int, int] = Field(default_factory=dict, description="Applications free of truncation per order")
    monotone: bool = Field(default=True, description="Annihilation at r implies annihilation at r + 1")


class CoverReport(BaseModel):
    """Model for the A-cover computation."""

    minimal_r: Optional[int] = Field(default=None, description="Order used for the relation and for B")
    cover_dims: List[WeightDimRow] = Field(default_factory=list, description="Dimensions of the cover per weight")
    b_spanning: bool = Field(default=False, description="W (x) V = B (x) V + X(V) on reliable blocks")
    relation_checked: int = Field(default=0, description="Relation instances found in X(V)")
    relation_failed: int = Field(default=0, description="Relation instances missing from X(V)")
    theta_checked: int = Field(default=0, description="Sampled theta equivariance instances free of truncation")
    theta_failed: int = Field(default=0, description="Instances where theta is not W-linear")
    stability_checked: int = Field(default=0, description="Generator images of X(V) tested for membership")
    stability_failed: int = Field(default=0, description="Generator images of X(V) that left X(V)")
    bound_respected: bool = Field(default=True, description="dim cover <= dim B * max dim V on reliable blocks")
    edge_flags: Dict[str, int] = Field(default_factory=dict, description="Counts of reliable and unreliable blocks")
    annihilation: Optional[AnnihilationReport] = Field(default=None, description="The omega search that fixed minimal_r")
