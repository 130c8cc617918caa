"""The factivity transform: cut every explanation down to the worlds where its formula holds."""

import logging

from ..models.model import Model

logger = logging.getLogger(__name__)


def factive_transform(m: Model) -> Model:
    """
    M^F: every coverage entry intersected with the truth set of its formula.

    Truth sets are taken in m itself; entries that become empty are dropped.
    The result evaluates every universe formula exactly as m does, passes
    check_factivity, and stays closed under the application rule.

    Example:
        an entry (t, p, {w1 w2}) with p true only at w1 becomes (t, p, {w1}).
    """
    if m.factive:
        return m
    result = Model.build(
        m.worlds,
        m.agents,
        m.partitions,
        m.valuation,
        m.ground,
        m.seeds,
        queries=m.queries,
        factive=True,
    )
    violations = result.coverage.closure_violations()
    assert not violations, violations[0].describe()
    logger.info(f"factive transform kept {len(result.coverage)} of {len(m.coverage)} entries")
    return result
