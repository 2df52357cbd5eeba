"""
Aritmética exata em corpos finitos F_{p^k}.

Um elemento é representado pelo índice inteiro Σ c_i p^i dos seus
coeficientes na base polinomial (módulo um polinômio irredutível). As
constantes do corpo primo têm o mesmo índice em qualquer corpo da torre.

Tabelas de exponencial/logaritmo (e de Zech, para p ímpar) em numpy
permitem operar sobre arrays inteiros de elementos; as versões escalares
usam listas Python, mais rápidas para acesso pontual.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import structlog

from .errors import (
    FieldMismatchError,
    FieldTooLargeError,
    GKGaloisError,
    NotPrimeError,
    UnsupportedParameterError,
)

logger = structlog.get_logger(__name__)

DEFAULT_TABLE_LIMIT = 1 << 22
# Até este tamanho as raízes vêm de varredura exaustiva; acima, de Cantor-Zassenhaus
# (alcançável só com GKG_FIELD_TABLE_LIMIT acima do padrão).
SCAN_LIMIT = 1 << 24


# ---------------------------------------------------------------------------
# Polinômios sobre F_p (listas de inteiros, coeficiente baixo primeiro)
# ---------------------------------------------------------------------------


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = 3
    while r * r <= n:
        if n % r == 0:
            return False
        r += 2
    return True


def prime_power(q: int) -> Tuple[int, int]:
    """Decompõe q = p^e; erro se q não for potência de primo."""
    if q < 2:
        raise UnsupportedParameterError(f"q={q} não é potência de primo")
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                break
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1:
                break
            return p, e
    raise UnsupportedParameterError(f"q={q} não é potência de primo")


def _prime_factors(n: int) -> List[int]:
    out, r, d = [], n, 2
    while d * d <= r:
        if r % d == 0:
            out.append(d)
            while r % d == 0:
                r //= d
        d += 1
    if r > 1:
        out.append(r)
    return out


def _fp_trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_divmod(a: List[int], b: List[int], p: int) -> Tuple[List[int], List[int]]:
    a = [x % p for x in a]
    b = _fp_trim([x % p for x in b])
    inv_lead = pow(b[-1], p - 2, p)
    db = len(b) - 1
    quot = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            quot[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return _fp_trim(quot), _fp_trim(a[:db])


def _fp_mulmod(a: List[int], b: List[int], m: List[int], p: int) -> List[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _fp_divmod(prod, m, p)[1]


def _fp_gcd(a: List[int], b: List[int], p: int) -> List[int]:
    a, b = _fp_trim([x % p for x in a]), _fp_trim([x % p for x in b])
    while b:
        a, b = b, _fp_divmod(a, b, p)[1]
    if not a:
        return a
    inv = pow(a[-1], p - 2, p)
    return [x * inv % p for x in a]


def _fp_is_irreducible(f: List[int], p: int) -> bool:
    """Teste de Ben-Or: gcd(x^{p^i} - x, f) = 1 para i ≤ deg/2."""
    k = len(f) - 1
    if k == 1:
        return True
    h = [0, 1]
    for _ in range(k // 2):
        acc = [1]
        base = h
        e = p
        while e:
            if e & 1:
                acc = _fp_mulmod(acc, base, f, p)
            base = _fp_mulmod(base, base, f, p)
            e >>= 1
        h = acc
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        if len(_fp_gcd(f, _fp_trim(diff), p)) > 1:
            return False
    return True


def _first_irreducible(p: int, k: int) -> Tuple[int, ...]:
    # ordem lexicográfica da lista de coeficientes (c0, c1, ..., c_{k-1}, 1)
    for low in itertools.product(range(p), repeat=k):
        f = list(low) + [1]
        if _fp_is_irreducible(f, p):
            return tuple(f)
    raise GKGaloisError(f"nenhum irredutível de grau {k} sobre F_{p}")


def _matpow_mod(m: np.ndarray, e: int, p: int) -> np.ndarray:
    result = np.eye(m.shape[0], dtype=np.int64)
    base = m.copy()
    while e:
        if e & 1:
            result = (result @ base) % p
        base = (base @ base) % p
        e >>= 1
    return result


# ---------------------------------------------------------------------------
# Corpos
# ---------------------------------------------------------------------------


class FieldDesc:
    """
    Corpo F_{p^k} = F_p[x]/(modulus) com tabelas de log/exp.

    Imutável após a construção; pode ser compartilhado entre threads e
    processos (fork).
    """

    def __init__(self, p: int, k: int, modulus: Sequence[int]):
        self.p = p
        self.k = k
        self.modulus = tuple(modulus)
        self.order = p**k
        self.m = self.order - 1
        self._half = self.m // 2 if p != 2 else 0
        self._build_tables()

    # -- construção ---------------------------------------------------------

    def _companion(self) -> np.ndarray:
        k, p = self.k, self.p
        c = np.zeros((k, k), dtype=np.int64)
        for i in range(k - 1):
            c[i + 1, i] = 1
        for i in range(k):
            c[i, k - 1] = (-self.modulus[i]) % p
        return c

    def _mult_matrix(self, g: int) -> np.ndarray:
        k, p = self.k, self.p
        comp = self._companion()
        acc = np.zeros((k, k), dtype=np.int64)
        power = np.eye(k, dtype=np.int64)
        for c in self._digits(g):
            if c:
                acc = (acc + c * power) % p
            power = (power @ comp) % p
        return acc

    def _digits(self, a: int) -> List[int]:
        out = []
        for _ in range(self.k):
            a, c = divmod(a, self.p)
            out.append(c)
        return out

    def _is_primitive(self, mat: np.ndarray) -> bool:
        ident = np.eye(self.k, dtype=np.int64)
        for r in _prime_factors(self.m):
            if np.array_equal(_matpow_mod(mat, self.m // r, self.p), ident):
                return False
        return True

    def _build_tables(self) -> None:
        p, k, m = self.p, self.k, self.m
        gamma, mat = 1, None
        for g in range(1, self.order):
            cand = self._mult_matrix(g)
            if self._is_primitive(cand):
                gamma, mat = g, cand
                break
        if mat is None:
            raise GKGaloisError(f"F_{p}^{k} sem elemento primitivo")
        self.generator = gamma

        block = min(m, 4096)
        vecs = np.zeros((k, block), dtype=np.int64)
        v = np.zeros(k, dtype=np.int64)
        v[0] = 1
        for i in range(block):
            vecs[:, i] = v
            v = (mat @ v) % p
        step = _matpow_mod(mat, block, p)
        weights = p ** np.arange(k, dtype=np.int64)
        exp = np.empty(m, dtype=np.int64)
        pos = 0
        while pos < m:
            take = min(block, m - pos)
            exp[pos : pos + take] = weights @ vecs[:, :take]
            vecs = (step @ vecs) % p
            pos += take

        log = np.full(self.order, -1, dtype=np.int64)
        log[exp] = np.arange(m, dtype=np.int64)
        if np.count_nonzero(log >= 0) != m:
            raise GKGaloisError(f"tabela exponencial de F_{p}^{k} não é bijetiva")

        self.exp = np.concatenate([exp, exp])
        self.log = log
        self._exp = self.exp.tolist()
        self._log = log.tolist()

        if p != 2:
            one_plus = np.where(exp % p != p - 1, exp + 1, exp - (p - 1))
            zech = np.where(one_plus == 0, -1, log[one_plus])
            self.zech = zech.astype(np.int64)
            self._zech = self.zech.tolist()

    # -- identidade ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldDesc)
            and self.p == other.p
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        return f"FieldDesc(F_{self.p}^{self.k})"

    @property
    def name(self) -> str:
        return f"F_{self.p}^{self.k}"

    # -- escalares ----------------------------------------------------------

    def const(self, c: int) -> int:
        return c % self.p

    def coeffs(self, a: int) -> List[int]:
        return self._digits(a)

    def from_coeffs(self, cs: Sequence[int]) -> int:
        if len(cs) > self.k:
            raise ValueError("vetor de coeficientes maior que o grau do corpo")
        return sum((c % self.p) * self.p**i for i, c in enumerate(cs))

    def text(self, a: int) -> str:
        return "[" + ",".join(str(c) for c in self._digits(a)) + "]"

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        la, lb = self._log[a], self._log[b]
        z = self._zech[(lb - la) % self.m]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        return self._exp[self._log[a] + self._half]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverso de zero")
        return self._exp[(self.m - self._log[a]) % self.m]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("potência negativa de zero")
            return 0
        return self._exp[(self._log[a] * e) % self.m]

    def frob(self, a: int, q: int) -> int:
        return self.pow(a, q)

    def in_subfield(self, a: int, d: int) -> bool:
        """True se a pertence ao subcorpo F_{p^d}."""
        return self.pow(a, self.p**d) == a

    def lex_key(self, a: int) -> Tuple[int, ...]:
        return tuple(self._digits(a))

    @cached_property
    def lex_rank(self) -> np.ndarray:
        """Posição de cada elemento na ordem lexicográfica dos coeficientes."""
        idx = np.arange(self.order, dtype=np.int64)
        rank = np.zeros(self.order, dtype=np.int64)
        for _ in range(self.k):
            idx, c = np.divmod(idx, self.p)
            rank = rank * self.p + c
        return rank

    def element(self, a: int) -> "FieldElement":
        return FieldElement(self, a)

    # -- vetorial -----------------------------------------------------------

    def vadd(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        la, lb = self.log[a], self.log[b]
        z = self.zech[(lb - la) % self.m]
        s = self.exp[la + z]
        out = np.where(z < 0, 0, s)
        return np.where(a == 0, b, np.where(b == 0, a, out))

    def vneg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a.copy()
        return np.where(a == 0, 0, self.exp[self.log[a] + self._half])

    def vsub(self, a, b) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vscale(self, a, s: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if s == 0:
            return np.zeros_like(a)
        out = self.exp[self.log[a] + self._log[s]]
        return np.where(a == 0, 0, out)

    def vpow(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        out = self.exp[(self.log[a] * e) % self.m]
        return np.where(a == 0, 0, out)

    def vinv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverso de zero")
        return self.exp[(self.m - self.log[a]) % self.m]

    def vdot(self, rows: Sequence[np.ndarray], coeffs: Sequence[int]) -> np.ndarray:
        """Σ coeffs[i]·rows[i] com escalares fixos."""
        acc = np.zeros_like(np.asarray(rows[0], dtype=np.int64))
        for r, c in zip(rows, coeffs):
            if c:
                acc = self.vadd(acc, self.vscale(r, c))
        return acc


def make_field(p: int, k: int, table_limit: int = DEFAULT_TABLE_LIMIT) -> FieldDesc:
    """
    Constrói (ou recupera do cache) o corpo F_{p^k}.

    Args:
        p: característica (primo)
        k: grau da extensão

    Returns:
        FieldDesc cujo módulo é o primeiro irredutível em ordem lexicográfica
    """
    if not is_prime(p):
        raise NotPrimeError(f"p={p} não é primo")
    if k < 1:
        raise ValueError("grau da extensão deve ser ≥ 1")
    if p**k > table_limit:
        raise FieldTooLargeError(f"F_{p}^{k} excede o limite de tabelas ({table_limit})")
    return _build_field(p, k)


@lru_cache(maxsize=None)
def _build_field(p: int, k: int) -> FieldDesc:
    modulus = _first_irreducible(p, k)
    desc = FieldDesc(p, k, modulus)
    logger.debug("corpo construído", corpo=desc.name, modulo=list(modulus))
    return desc


# ---------------------------------------------------------------------------
# Elementos
# ---------------------------------------------------------------------------

Operand = Union["FieldElement", int]


@dataclass(frozen=True)
class FieldElement:
    """Elemento de F_{p^k}; operações entre corpos distintos são erro."""

    desc: FieldDesc
    value: int

    def _other(self, other: Operand) -> int:
        if isinstance(other, FieldElement):
            if other.desc != self.desc:
                raise FieldMismatchError(
                    f"operação entre {self.desc.name} e {other.desc.name} sem mergulho"
                )
            return other.value
        if isinstance(other, int):
            return self.desc.const(other)
        raise TypeError(f"operando não suportado: {type(other).__name__}")

    @property
    def coeffs(self) -> List[int]:
        return self.desc.coeffs(self.value)

    def __add__(self, other: Operand) -> "FieldElement":
        return FieldElement(self.desc, self.desc.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other: Operand) -> "FieldElement":
        return FieldElement(self.desc, self.desc.sub(self.value, self._other(other)))

    def __rsub__(self, other: Operand) -> "FieldElement":
        return FieldElement(self.desc, self.desc.sub(self._other(other), self.value))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.desc, self.desc.neg(self.value))

    def __mul__(self, other: Operand) -> "FieldElement":
        return FieldElement(self.desc, self.desc.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other: Operand) -> "FieldElement":
        return FieldElement(self.desc, self.desc.div(self.value, self._other(other)))

    def __pow__(self, e: int) -> "FieldElement":
        return FieldElement(self.desc, self.desc.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.desc, self.desc.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self) -> str:
        return self.desc.text(self.value)

    def __repr__(self) -> str:
        return f"FieldElement({self.desc.name}, {self})"


def frobenius(e: FieldElement, q: int) -> FieldElement:
    """e ↦ e^q; q precisa ser potência da característica."""
    p = e.desc.p
    r = q
    while r % p == 0 and r > 1:
        r //= p
    if r != 1:
        raise ValueError(f"q={q} não é potência de p={p}")
    return FieldElement(e.desc, e.desc.frob(e.value, q))


# ---------------------------------------------------------------------------
# Mergulhos
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TowerMap:
    """Homomorfismo src → dst determinado pela imagem da classe de x."""

    src: FieldDesc
    dst: FieldDesc
    theta: int
    table: np.ndarray = field(compare=False, repr=False, hash=False)

    @property
    def image_of_generator(self) -> FieldElement:
        return FieldElement(self.dst, self.theta)

    def __call__(self, a: int) -> int:
        return int(self.table[a])

    def embed_array(self, a) -> np.ndarray:
        return self.table[np.asarray(a, dtype=np.int64)]

    def compose(self, after: "TowerMap") -> "TowerMap":
        """Aplica self e depois `after` (src → self.dst → after.dst)."""
        if after.src != self.dst:
            raise FieldMismatchError("composição de mergulhos incompatíveis")
        return TowerMap(
            self.src, after.dst, after(self.theta), after.table[self.table]
        )


def tower_map(src: FieldDesc, dst: FieldDesc) -> TowerMap:
    """Mergulho canônico: x ↦ menor raiz (em ordem lexicográfica) do módulo de src."""
    if src.p != dst.p or dst.k % src.k != 0:
        raise FieldMismatchError(f"{src.name} não é subcorpo de {dst.name}")
    xs = np.arange(dst.order, dtype=np.int64)
    vals = np.zeros(dst.order, dtype=np.int64)
    for c in reversed(src.modulus):
        vals = dst.vadd(dst.vmul(vals, xs), c)
    roots = np.nonzero(vals == 0)[0]
    if roots.size == 0:
        raise GKGaloisError(f"módulo de {src.name} sem raiz em {dst.name}")
    theta = int(roots[np.argmin(dst.lex_rank[roots])])

    src_idx = np.arange(src.order, dtype=np.int64)
    table = np.zeros(src.order, dtype=np.int64)
    power = 1
    for _ in range(src.k):
        src_idx, digit = np.divmod(src_idx, src.p)
        table = dst.vadd(table, dst.vscale(digit, power))
        power = dst.mul(power, theta)
    return TowerMap(src, dst, theta, table)


def embed(e: FieldElement, m: TowerMap) -> FieldElement:
    if e.desc != m.src:
        raise FieldMismatchError(f"{e.desc.name} não é o domínio do mergulho")
    return FieldElement(m.dst, m(e.value))


class FieldTower:
    """
    Torre F_q ⊂ F_{q²} ⊂ F_{q⁶} ⊂ F_{q^{6m}} usada numa sessão.

    Todos os mergulhos partem dos corpos pequenos para F_{q⁶} e de F_{q⁶}
    para as extensões; os demais são composições, o que garante a
    compatibilidade entre caminhos.
    """

    def __init__(self, q: int, m_max: int = 3, table_limit: int = DEFAULT_TABLE_LIMIT):
        self.q = q
        self.p, self.e = prime_power(q)
        self.table_limit = table_limit
        self.prime = make_field(self.p, 1, table_limit)
        self.base = make_field(self.p, self.e, table_limit)
        self.quad = make_field(self.p, 2 * self.e, table_limit)
        self.work = make_field(self.p, 6 * self.e, table_limit)

        self.requested_m_max = m_max
        self.extensions: Dict[int, FieldDesc] = {1: self.work}
        for m in range(2, m_max + 1):
            if self.p ** (6 * self.e * m) > table_limit:
                logger.warning(
                    "m_max reduzido pelo limite de tabelas",
                    solicitado=m_max,
                    efetivo=m - 1,
                    q=q,
                )
                break
            self.extensions[m] = make_field(self.p, 6 * self.e * m, table_limit)
        self.m_max = max(self.extensions)

        self._to_work: Dict[int, TowerMap] = {}
        self._lift: Dict[int, TowerMap] = {}

    def field_for(self, m: int) -> FieldDesc:
        return self.extensions[m]

    def map(self, src: FieldDesc, dst: FieldDesc) -> TowerMap:
        """Mergulho canônico entre dois corpos da torre."""
        if src == dst:
            return TowerMap(src, dst, self._identity_theta(src), np.arange(src.order))
        if dst == self.work:
            return self._work_map(src)
        for m, ext in self.extensions.items():
            if ext == dst and m > 1:
                lift = self._lift_map(m)
                if src == self.work:
                    return lift
                return self._work_map(src).compose(lift)
        raise FieldMismatchError(f"sem mergulho {src.name} → {dst.name} na torre")

    def _identity_theta(self, f: FieldDesc) -> int:
        return f.p if f.k > 1 else 0

    def _work_map(self, src: FieldDesc) -> TowerMap:
        if src.k not in self._to_work:
            if self.work.k % src.k != 0:
                raise FieldMismatchError(f"{src.name} não está contido em F_q⁶")
            self._to_work[src.k] = tower_map(src, self.work)
        return self._to_work[src.k]

    def _lift_map(self, m: int) -> TowerMap:
        if m not in self._lift:
            self._lift[m] = tower_map(self.work, self.extensions[m])
        return self._lift[m]


# ---------------------------------------------------------------------------
# Solucionadores especiais
# ---------------------------------------------------------------------------


def _sorted_elements(desc: FieldDesc, values: Iterable[int]) -> List[FieldElement]:
    return [FieldElement(desc, int(v)) for v in sorted(values, key=desc.lex_key)]


def solve_additive(q: int, c: FieldElement, desc: FieldDesc) -> List[FieldElement]:
    """Todas as soluções de x^q + x = c no corpo."""
    if c.desc != desc:
        raise FieldMismatchError("c não pertence ao corpo informado")
    p, e = prime_power(q)
    if p != desc.p or desc.k % e != 0:
        raise FieldMismatchError(f"{desc.name} não contém F_{q}")
    xs = np.arange(desc.order, dtype=np.int64)
    vals = desc.vadd(desc.vpow(xs, q), xs)
    sols = np.nonzero(vals == c.value)[0]
    return _sorted_elements(desc, sols.tolist())


def roots_of_unity(n: int, desc: FieldDesc) -> List[FieldElement]:
    """Raízes n-ésimas da unidade; são gcd(n, |F|-1) elementos."""
    g = math.gcd(n, desc.m)
    step = desc.m // g
    return _sorted_elements(desc, (desc._exp[step * j] for j in range(g)))


# ---------------------------------------------------------------------------
# Polinômios univariados sobre um FieldDesc (índices, coeficiente baixo primeiro)
# ---------------------------------------------------------------------------

Poly = List[int]


def poly_trim(a: Sequence[int]) -> Poly:
    out = list(a)
    while out and out[-1] == 0:
        out.pop()
    return out


def poly_add(F: FieldDesc, a: Sequence[int], b: Sequence[int]) -> Poly:
    n = max(len(a), len(b))
    out = [
        F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)
    ]
    return poly_trim(out)


def poly_sub(F: FieldDesc, a: Sequence[int], b: Sequence[int]) -> Poly:
    return poly_add(F, a, [F.neg(c) for c in b])


def poly_scale(F: FieldDesc, a: Sequence[int], s: int) -> Poly:
    return poly_trim([F.mul(c, s) for c in a])


def poly_mul(F: FieldDesc, a: Sequence[int], b: Sequence[int]) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return poly_trim(out)


def poly_divmod(F: FieldDesc, a: Sequence[int], b: Sequence[int]) -> Tuple[Poly, Poly]:
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("divisão por polinômio nulo")
    rem = poly_trim(a)
    db = len(b) - 1
    if len(rem) <= db:
        return [], rem
    inv_lead = F.inv(b[-1])
    quot = [0] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        c = F.mul(c, inv_lead)
        quot[i - db] = c
        for j in range(db + 1):
            rem[i - db + j] = F.sub(rem[i - db + j], F.mul(c, b[j]))
    return poly_trim(quot), poly_trim(rem[:db])


def poly_mod(F: FieldDesc, a: Sequence[int], b: Sequence[int]) -> Poly:
    return poly_divmod(F, a, b)[1]


def poly_monic(F: FieldDesc, a: Sequence[int]) -> Poly:
    a = poly_trim(a)
    if not a:
        return a
    return poly_scale(F, a, F.inv(a[-1]))


def poly_gcd(F: FieldDesc, a: Sequence[int], b: Sequence[int]) -> Poly:
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_mod(F, a, b)
    return poly_monic(F, a)


def poly_eval(F: FieldDesc, a: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def poly_deriv(F: FieldDesc, a: Sequence[int]) -> Poly:
    return poly_trim([F.mul(F.const(i), a[i]) for i in range(1, len(a))])


def poly_powmod(F: FieldDesc, a: Sequence[int], e: int, m: Sequence[int]) -> Poly:
    result: Poly = [1]
    base = poly_mod(F, a, m)
    while e:
        if e & 1:
            result = poly_mod(F, poly_mul(F, result, base), m)
        base = poly_mod(F, poly_mul(F, base, base), m)
        e >>= 1
    return result


def _frobenius_x(F: FieldDesc, f: Poly) -> Poly:
    """x^{|F|} mod f, por k potências p-ésimas sucessivas."""
    h = poly_mod(F, [0, 1], f)
    for _ in range(F.k):
        h = poly_powmod(F, h, F.p, f)
    return h


def _split_linear(F: FieldDesc, g: Poly) -> List[int]:
    """Raízes de g, produto de fatores lineares distintos (Cantor-Zassenhaus)."""
    g = poly_monic(F, g)
    if len(g) <= 1:
        return []
    if len(g) == 2:
        return [F.neg(g[0])]
    for delta in range(1, F.order):
        if F.p == 2:
            lin = poly_mod(F, [0, delta], g)
            h, acc = lin, lin
            for _ in range(F.k - 1):
                h = poly_mod(F, poly_mul(F, h, h), g)
                acc = poly_add(F, acc, h)
        else:
            acc = poly_sub(F, poly_powmod(F, [delta, 1], F.m // 2, g), [1])
        d = poly_gcd(F, g, acc)
        if 1 < len(d) < len(g):
            return _split_linear(F, d) + _split_linear(F, poly_divmod(F, g, d)[0])
    raise GKGaloisError("falha ao separar fatores lineares")


def _root_multiplicity(F: FieldDesc, f: Poly, r: int) -> int:
    count = 0
    cur = f
    while len(cur) > 1:
        quot, rem = poly_divmod(F, cur, [F.neg(r), 1])
        if rem:
            break
        count += 1
        cur = quot
    return count


def distinct_roots(F: FieldDesc, f: Sequence[int]) -> List[int]:
    f = poly_trim(f)
    if len(f) <= 1:
        return []
    if F.order <= SCAN_LIMIT:
        xs = np.arange(F.order, dtype=np.int64)
        vals = np.zeros(F.order, dtype=np.int64)
        for c in reversed(f):
            vals = F.vadd(F.vmul(vals, xs), c)
        return np.nonzero(vals == 0)[0].tolist()
    h = poly_sub(F, _frobenius_x(F, f), [0, 1])
    return _split_linear(F, poly_gcd(F, f, h))


def univariate_roots(
    poly: Sequence[Union[int, FieldElement]], desc: FieldDesc
) -> List[Tuple[FieldElement, int]]:
    """
    Raízes de um polinômio no corpo, com multiplicidade.

    Args:
        poly: coeficientes do termo constante ao líder
        desc: corpo onde as raízes são procuradas

    Returns:
        Lista (raiz, multiplicidade) em ordem canônica
    """
    coeffs = []
    for c in poly:
        if isinstance(c, FieldElement):
            if c.desc != desc:
                raise FieldMismatchError("coeficiente de outro corpo")
            coeffs.append(c.value)
        else:
            coeffs.append(int(c))
    f = poly_trim(coeffs)
    if not f:
        raise ValueError("polinômio nulo não tem conjunto de raízes finito")
    roots = distinct_roots(desc, f)
    out = [(FieldElement(desc, r), _root_multiplicity(desc, f, r)) for r in roots]
    return sorted(out, key=lambda rm: desc.lex_key(rm[0].value))
