import logging

import numpy as np

from app.core.degseq import DegreeSequence, is_digraphic, is_digraphic_arrays
from app.core.errors import NotDigraphicError, ResidualInfeasibleError
from app.models.digraph import Digraph

logger = logging.getLogger(__name__)


def realize(d: DegreeSequence) -> Digraph:
    """Build one realization of ``d`` with a Kleitman-Wang style greedy.

    Repeatedly take the unprocessed vertex with the largest remaining
    out-degree (ties: larger remaining in-degree, then lower index) and send
    its out-stubs to the other vertices with the largest remaining in-degree
    (ties: larger remaining out-degree, then lower index). The residual
    sequence is re-checked after every vertex.
    """
    if not is_digraphic(d):
        raise NotDigraphicError(f"{d!r} has no simple directed realization")

    n = d.n
    out = d.out_degrees.copy()
    inn = d.in_degrees.copy()
    index = np.arange(n)
    processed = np.zeros(n, dtype=bool)
    g = Digraph(n)

    for _ in range(n):
        pending = index[~processed]
        v = int(pending[np.lexsort((pending, -inn[pending], -out[pending]))[0]])
        stubs = int(out[v])
        if stubs:
            others = index[index != v]
            ranked = others[np.lexsort((others, -out[others], -inn[others]))]
            chosen = ranked[:stubs]
            if inn[chosen].min() < 1:
                raise ResidualInfeasibleError(
                    f"Vertex {v + 1} has more out-stubs than available targets"
                )
            for w in chosen.tolist():
                g.add_arc(v + 1, w + 1)
            inn[chosen] -= 1
            out[v] = 0
        processed[v] = True
        if not is_digraphic_arrays(out, inn):
            logger.error(
                f"Residual sequence became infeasible after vertex {v + 1} of {d!r}"
            )
            raise ResidualInfeasibleError(
                f"Residual sequence infeasible after vertex {v + 1}"
            )

    return g
