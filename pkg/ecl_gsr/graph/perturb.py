"""Random edge corruption for robustness experiments."""

import math

import numpy as np
import structlog

from ecl_gsr.core.exceptions import SamplingError
from ecl_gsr.graph.model import canonical_edges

logger = structlog.get_logger(__name__)

# Above this many candidate pairs absent edges are found by rejection sampling
# instead of enumerating the complement.
_ENUMERATION_LIMIT = 5_000_000


def _sample_absent_pairs(num_nodes, existing_keys, count, rng):
    total_pairs = num_nodes * (num_nodes - 1) // 2
    available = total_pairs - len(existing_keys)
    if count > available:
        raise SamplingError(
            f"Graph too dense: requested {count} new edges, only {available} absent pairs"
        )
    if count == 0:
        return np.empty((0, 2), dtype=np.int64)

    if total_pairs <= _ENUMERATION_LIMIT or count > available // 2:
        src, dst = np.triu_indices(num_nodes, k=1)
        keys = src.astype(np.int64) * num_nodes + dst
        absent = keys[~np.isin(keys, existing_keys)]
        chosen = rng.choice(absent, size=count, replace=False)
    else:
        chosen_set = set()
        chosen = []
        existing = set(existing_keys.tolist())
        while len(chosen) < count:
            draw = rng.integers(0, num_nodes, size=(2 * (count - len(chosen)) + 16, 2))
            for a, b in draw:
                if a == b:
                    continue
                key = int(min(a, b)) * num_nodes + int(max(a, b))
                if key in existing or key in chosen_set:
                    continue
                chosen_set.add(key)
                chosen.append(key)
                if len(chosen) == count:
                    break
        chosen = np.array(chosen, dtype=np.int64)

    return np.stack([chosen // num_nodes, chosen % num_nodes], axis=1)


def perturb_edges(graph, add_ratio, remove_ratio, seed):
    """
    Randomly remove and add edges.

    Removes floor(remove_ratio * M) existing edges and adds floor(add_ratio * M)
    pairs that are absent from the input graph, both chosen uniformly.
    Features, labels and masks are carried over unchanged.

    Args:
        graph: Input Graph with M edges
        add_ratio: Fraction of M to add, >= 0
        remove_ratio: Fraction of M to remove, in [0, 1]
        seed: Random seed

    Returns:
        New Graph
    """
    if add_ratio < 0:
        raise SamplingError(f"add_ratio must be >= 0, got {add_ratio}")
    if not 0 <= remove_ratio <= 1:
        raise SamplingError(f"remove_ratio must be in [0, 1], got {remove_ratio}")

    rng = np.random.default_rng(seed)
    v = graph.num_nodes
    m = graph.num_edges
    n_remove = math.floor(remove_ratio * m + 1e-9)
    n_add = math.floor(add_ratio * m + 1e-9)

    existing_keys = graph.edges[:, 0] * v + graph.edges[:, 1]
    added = _sample_absent_pairs(v, existing_keys, n_add, rng)

    keep = np.sort(rng.choice(m, size=m - n_remove, replace=False)) if m else np.empty(0, int)
    kept = graph.edges[keep]

    edges, _ = canonical_edges(np.concatenate([kept, added]), v)
    logger.info(
        "Perturbed edges",
        original=m,
        removed=n_remove,
        added=n_add,
        result=len(edges),
        seed=seed,
    )
    return graph.with_edges(edges)
