"""Numerical tolerances for rank, feasibility and reconstruction decisions.

All thresholds live in one frozen dataclass so that a caller (or the CLI)
can override a single knob without touching call sites.  Relative
tolerances are documented at their point of use.
"""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    sym: float = 1e-10          # hermitian deviation, relative to 1 + |M|_F
    comb: float = 1e-8          # | sum gamma_i* gamma_i - I |_F
    rank: float = 1e-10         # singular-value cutoff, relative to sigma_max
    trace: float = 1e-8         # trace-word comparisons, relative
    feas: float = 1e-7          # membership / feasibility margin
    ker: float = 1e-8           # kernel detection, relative to max(lambda_max, 1)
    solver: float = 1e-9        # stall threshold for the ascent solver
    alpha: float = 1e-6         # bisection resolution for the dilation scale
    block: float = 1e-8         # block-diagonal residual
    reconstruct: float = 1e-6   # decomposition residual, relative to 1 + |X|_F

    def with_ker(self, ker: float) -> "Tolerances":
        return replace(self, ker=ker)

    def with_feas(self, feas: float) -> "Tolerances":
        return replace(self, feas=feas)

    def tightened(self, factor: float = 0.1) -> "Tolerances":
        """Tighter kernel detection; used by the one-shot dilation retry."""
        return replace(self, ker=self.ker * factor)


DEFAULT = Tolerances()
