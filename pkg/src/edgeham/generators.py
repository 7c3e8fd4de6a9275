"""Deterministic instance generators for tests and the `gen` command.

Family specs are short strings, e.g. "path 5", "gnm 10 15", "vc_bounded 10 2 12",
"hyper_hs 12 2 9 4". Randomized families are reproducible for a fixed seed and
return their planted structure in the metadata.
"""

from __future__ import annotations

from itertools import combinations

from .core import AnyGraph, build_graph, build_hypergraph
from .errors import InfeasibleSpecError
from .rng import SplitMix64, mix


def _pairs_touching(n: int, planted: list[int]) -> list[tuple[int, int]]:
    ps = set(planted)
    out = []
    for u, v in combinations(range(n), 2):
        if u in ps or v in ps:
            out.append((u, v))
    return out


def generate_family(spec: str, seed: int = 0) -> tuple[AnyGraph, dict]:
    """Build the instance described by `spec`; returns (instance, metadata).

    Deterministic families ignore the seed. The metadata always carries the
    family, the effective seed and any planted structure.
    """
    tokens = spec.split()
    if not tokens:
        raise InfeasibleSpecError("empty family spec")
    family, args = tokens[0], tokens[1:]
    try:
        nums = [int(a) for a in args]
    except ValueError as exc:
        raise InfeasibleSpecError(f"non-integer argument in {spec!r}") from exc

    info: dict = {"family": family, "seed": seed, "spec": spec}

    if family == "path":
        (n,) = nums
        if n < 1:
            raise InfeasibleSpecError("path needs n >= 1")
        return build_graph(n, [(i, i + 1) for i in range(n - 1)]), info
    if family == "cycle":
        (n,) = nums
        if n < 3:
            raise InfeasibleSpecError("cycle needs n >= 3")
        return build_graph(n, [(i, (i + 1) % n) for i in range(n)]), info
    if family == "complete":
        (n,) = nums
        if n < 1:
            raise InfeasibleSpecError("complete needs n >= 1")
        return build_graph(n, list(combinations(range(n), 2))), info
    if family == "star":
        (n,) = nums
        if n < 1:
            raise InfeasibleSpecError("star needs n >= 1 leaves")
        info["planted"] = (0,)
        return build_graph(n + 1, [(0, i) for i in range(1, n + 1)]), info
    if family == "biclique":
        a, b = nums
        if a < 1 or b < 1:
            raise InfeasibleSpecError("biclique needs a, b >= 1")
        edges = [(i, a + j) for i in range(a) for j in range(b)]
        info["parts"] = (tuple(range(a)), tuple(range(a, a + b)))
        return build_graph(a + b, edges), info
    if family == "gnm":
        n, m = nums[:2]
        if len(nums) == 3:
            seed = nums[2]
            info["seed"] = seed
        if m > n * (n - 1) // 2:
            raise InfeasibleSpecError(f"gnm: m={m} exceeds the {n}-vertex maximum")
        rng = SplitMix64(mix(seed, 0x6D))
        pool = list(combinations(range(n), 2))
        return build_graph(n, sorted(rng.sample(pool, m))), info
    if family == "vc_bounded":
        n, k, m = nums[:3]
        if len(nums) == 4:
            seed = nums[3]
            info["seed"] = seed
        if k > n:
            raise InfeasibleSpecError("vc_bounded needs k <= n")
        rng = SplitMix64(mix(seed, 0xC0))
        planted = sorted(rng.sample(range(n), k))
        pool = _pairs_touching(n, planted)
        if m > len(pool):
            raise InfeasibleSpecError(
                f"vc_bounded: m={m} exceeds the {len(pool)} edges meeting the cover"
            )
        info["planted"] = tuple(planted)
        return build_graph(n, sorted(rng.sample(pool, m))), info
    if family == "hyper_hs":
        n, k, m, maxsize = nums[:4]
        if len(nums) == 5:
            seed = nums[4]
            info["seed"] = seed
        if k > n or maxsize < 1 or maxsize > n:
            raise InfeasibleSpecError("hyper_hs needs k <= n and 1 <= maxsize <= n")
        rng = SplitMix64(mix(seed, 0x85))
        planted = sorted(rng.sample(range(n), k))
        others = [v for v in range(n)]
        edges = []
        for _ in range(m):
            size = 1 + rng.randrange(maxsize)
            anchor = planted[rng.randrange(k)]
            members = {anchor}
            while len(members) < size:
                members.add(others[rng.randrange(n)])
            edges.append(frozenset(members))
        info["planted"] = tuple(planted)
        return build_hypergraph(n, edges), info

    raise InfeasibleSpecError(f"unknown family {family!r}")
