"""
半因子性 ⟺ 测地性、弱半因子性 ⟺ KVL 的穷举扫描，以及 Carlitz 检验
"""

import time
from typing import Optional

from fastmcp.utilities.logging import get_logger

from .blocks import SupportIndex, is_half_factorial, is_weakly_half_factorial
from .catalog import abelian_catalog
from .cayley import build_cayley, is_geodetical_cayley
from .digraph import is_geodetical
from .formats import atom_certificate, cycle_certificate, format_subset, path_pair_certificate
from .group import AbelianGroup, GroupElement
from .models import Certificate, Counterexample, TheoremSweepReport
from .voltage import graph_weakly_half_factorial

logger = get_logger(__name__)

DIRECTIONS = (
    "hf_not_geodetical",
    "geodetical_not_hf",
    "whf_not_kvl",
    "kvl_not_whf",
    "optimization_mismatches",
)


def _record(
    found: dict[str, Counterexample],
    key: str,
    group: AbelianGroup,
    subset: tuple[GroupElement, ...],
    detail: str,
    certificate: Optional[Certificate],
) -> None:
    if key not in found:
        logger.warning("%s: %s with S=%s (%s)", key, group.describe(), list(subset), detail)
        found[key] = Counterexample(
            group=group.describe(),
            subset=[list(g) for g in subset],
            arguments=f"--group {group.spec()} --subset '{format_subset(subset)}'",
            detail=detail,
            certificate=certificate,
        )


def sweep_theorems(
    max_order: int,
    naive: bool = False,
    max_vertices: Optional[int] = None,
) -> TheoremSweepReport:
    """对阶 ≤ max_order 的每个交换群及 G \\ {e} 的每个子集 S，比较
    (C) 与 Cay(G;S) 的测地性、(C₀) 与 Cayley 电压的 KVL；naive=True 时
    另用全对检验复核单源检验。每个方向只保留第一个反例。
    """
    started = time.perf_counter()
    counts = dict.fromkeys(DIRECTIONS, 0)
    found: dict[str, Counterexample] = {}
    groups = abelian_catalog(max_order)
    checked = 0
    for group in groups:
        index = SupportIndex(group)
        for mask in range(index.full_mask + 1):
            subset = index.subset_of(mask)
            checked += 1
            cayley = build_cayley(group, subset)
            hf = index.is_half_factorial_mask(mask)
            whf = index.is_weakly_half_factorial_mask(mask)
            geodetical, pair = is_geodetical_cayley(cayley, max_vertices=max_vertices)
            if naive:
                all_pairs, naive_pair = is_geodetical(cayley.digraph, max_vertices=max_vertices)
                if all_pairs != geodetical:
                    counts["optimization_mismatches"] += 1
                    witness = pair or naive_pair
                    _record(
                        found, "optimization_mismatches", group, subset,
                        f"single-source says {geodetical}, all-pairs says {all_pairs}",
                        path_pair_certificate(cayley.digraph, witness) if witness else None,
                    )
            if hf and not geodetical:
                counts["hf_not_geodetical"] += 1
                assert pair is not None
                _record(
                    found, "hf_not_geodetical", group, subset,
                    "every atom has cross number 1 but two paths differ in length",
                    path_pair_certificate(cayley.digraph, pair),
                )
            if geodetical and not hf:
                counts["geodetical_not_hf"] += 1
                _, atom = is_half_factorial(group, subset)
                _record(
                    found, "geodetical_not_hf", group, subset,
                    "Cayley digraph is geodetical but an atom has cross number != 1",
                    atom_certificate(atom, "cross number != 1") if atom else None,
                )
            kvl = graph_weakly_half_factorial(cayley, max_vertices)
            if whf and not kvl.holds:
                counts["whf_not_kvl"] += 1
                _record(
                    found, "whf_not_kvl", group, subset,
                    "every atom has integral cross number but a cycle violates KVL",
                    cycle_certificate(cayley.digraph, kvl),
                )
            if kvl.holds and not whf:
                counts["kvl_not_whf"] += 1
                _, atom = is_weakly_half_factorial(group, subset)
                _record(
                    found, "kvl_not_whf", group, subset,
                    "KVL holds but an atom has non-integral cross number",
                    atom_certificate(atom, "cross number not an integer") if atom else None,
                )
        logger.debug("%s: %d subsets swept", group.describe(), index.full_mask + 1)
    carlitz_ok, _ = carlitz_check(max_order)
    return TheoremSweepReport(
        max_order=max_order,
        groups=[g.describe() for g in groups],
        subsets_checked=checked,
        carlitz_ok=carlitz_ok,
        counterexamples=found,
        elapsed=time.perf_counter() - started,
        **counts,
    )


def carlitz_check(max_order: int) -> tuple[bool, list[str]]:
    """|G| = 2 时 G \\ {e} 满足 (C)；3 ≤ |G| 时不满足。返回 (是否全部成立, 失败的群)"""
    failures = []
    for group in abelian_catalog(max_order, min_order=2):
        index = SupportIndex(group)
        hf = index.is_half_factorial_mask(index.full_mask)
        if hf != (group.order == 2):
            failures.append(group.describe())
    return not failures, failures
