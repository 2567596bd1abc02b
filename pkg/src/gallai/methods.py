"""Name -> decomposer registry and the JSON record shared by the CLI and experiments."""

from __future__ import annotations

from .bpd import DEFAULT_RETRIES, decompose_bpd_extend
from .graph import DecompResult, Graph, gallai_bound, verify_decomposition
from .ham_table import decompose_ham_table
from .incremental import decompose_incremental
from .mepp import decompose_mepp
from .pseudo_tree import decompose_pseudo_tree

METHODS = ("mepp", "pseudo-tree", "bpd-extend", "ham-table", "incremental")


def run_method(
    name: str, g: Graph, seed: int | str = 0, retries: int = DEFAULT_RETRIES
) -> DecompResult:
    """Run one decomposer; randomness is drawn from the ``"<seed>:<name>"`` stream."""
    stream = f"{seed}:{name}"
    if name == "mepp":
        return decompose_mepp(g)
    if name == "pseudo-tree":
        return decompose_pseudo_tree(g)
    if name == "bpd-extend":
        return decompose_bpd_extend(g, retries=retries, seed=stream)
    if name == "ham-table":
        return decompose_ham_table(g)
    if name == "incremental":
        return decompose_incremental(g)
    if name == "oracle":
        from .oracle import oracle_result

        return oracle_result(g)
    raise ValueError(f"unknown method {name!r}; choose from {', '.join(METHODS)} or oracle")


def result_record(g: Graph, res: DecompResult) -> dict:
    """JSON report for one run, re-verified against ``g``.

    A decomposition that fails verification is never reported as paths: it is
    turned into a ``verify`` failure carrying the offending items.
    """
    rec: dict = {
        "n": g.n,
        "e": g.e,
        "method": res.method,
        "paths": [],
        "path_count": None,
        "bound": gallai_bound(g.n),
        "valid": False,
        "within_bound": False,
        "failure": None,
    }
    if not res.ok:
        rec["failure"] = res.failure.to_json() if res.failure else {"stage": "unknown", "detail": {}}
        return rec
    rep = verify_decomposition(g, res.decomposition)
    if not rep.valid:
        rec["failure"] = {
            "stage": "verify",
            "detail": {
                "offending_items": list(rep.offending_items),
                "rejected_paths": res.decomposition.as_lists(),
            },
        }
        return rec
    rec.update(
        paths=res.decomposition.as_lists(),
        path_count=rep.path_count,
        valid=True,
        within_bound=rep.within_bound,
    )
    return rec

