"""Center of the lattice Poisson algebra."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..symbolic_poisson.laurent import LaurentPoly
from ..symbolic_poisson.structures import bracket, lv_structure
from .model import check_range


class CenterError(RuntimeError):
    pass


def k_set(N: int, L: int) -> list[int]:
    return [k for k in range(1, N + 1) if (N % k == 0 or (N - 1) % k == 0) and L % k == 0]


def k0_set(N: int, L: int) -> list[int]:
    K = k_set(N, L)
    a = max(k for k in K if N % k == 0)
    b = max(k for k in K if (N - 1) % k == 0)
    return sorted({a, b})


def center_count(N: int, L: int) -> int:
    K0 = k0_set(N, L)
    return sum(K0) - (len(K0) - 1)


def center_generator(s, L: int, k: int, i: int) -> LaurentPoly:
    """``prod_{n=0}^{L/k-1} V_{kn+i}`` (1-based ``i``)."""
    out = s.const(1)
    for n in range(L // k):
        out = out * s.gen(k * n + i - 1)
    return out


@dataclass
class CenterSpec:
    N: int
    L: int
    K: list
    K0: list
    n0: int
    generators: dict = field(default_factory=dict)

    def generator_list(self) -> list[tuple[tuple[int, int], LaurentPoly]]:
        return sorted(self.generators.items())


def center_spec(N: int, L: int, verify: bool = True) -> CenterSpec:
    """Center data; every generator is checked central by exact brackets."""
    check_range(N, L)
    s = lv_structure(N, L)
    K, K0 = k_set(N, L), k0_set(N, L)
    gens = {(k, i): center_generator(s, L, k, i) for k in K0 for i in range(1, k + 1)}
    spec = CenterSpec(N, L, K, K0, center_count(N, L), gens)
    if verify:
        for key, P in gens.items():
            for n in range(L):
                if bracket(s.gen(n), P, s):
                    raise CenterError(f"P_{key[0]}^({key[1]}) fails to commute with V{n + 1}")
    return spec


def sharpness(N: int, L: int) -> dict[int, bool]:
    """For each divisor ``k'`` of L outside K: does some ``P_k'^(i)`` fail to be central?"""
    s = lv_structure(N, L)
    K = set(k_set(N, L))
    out = {}
    for k in range(1, L + 1):
        if L % k or k in K:
            continue
        noncentral = any(
            bracket(s.gen(n), center_generator(s, L, k, i), s)
            for i in range(1, k + 1) for n in range(L)
        )
        out[k] = noncentral
    return out
