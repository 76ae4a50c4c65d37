"""Entropia binária e taxa assintótica de chave secreta (limite tipo BBM92)."""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq
from scipy.special import entr

DEFAULT_F_EC = 1.1


def binary_entropy(x: float) -> float:
    """h(x) = −x log₂x − (1−x) log₂(1−x), com h(0) = h(1) = 0."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"Argumento da entropia binária fora de [0, 1]: {x}")
    return float((entr(x) + entr(1.0 - x)) / math.log(2.0))


def secret_fraction(qx: float, qz: float, f_ec: float = DEFAULT_F_EC) -> float:
    """1 − f·h(Q_Z) − h(Q_X), sem truncamento."""
    for name, value in (("qx", qx), ("qz", qz)):
        if not 0.0 <= value <= 0.5:
            raise ValueError(f"{name} fora de [0, 0.5]: {value}")
    if f_ec < 1.0:
        raise ValueError(f"Eficiência de correção de erros deve ser >= 1: {f_ec}")
    return 1.0 - f_ec * binary_entropy(qz) - binary_entropy(qx)


def secret_key_rate(sifted_rate_hz: float, qx: float, qz: float, f_ec: float = DEFAULT_F_EC) -> float:
    """max(0, R·(1 − f·h(Q_Z) − h(Q_X))) em bits/s."""
    if sifted_rate_hz < 0:
        raise ValueError(f"Taxa peneirada negativa: {sifted_rate_hz}")
    return max(0.0, sifted_rate_hz * secret_fraction(qx, qz, f_ec))


def critical_qber_x(qz: float, f_ec: float = DEFAULT_F_EC) -> float:
    """Q_X acima do qual a fração secreta é nula (NaN se já é nula em Q_X = 0)."""
    if secret_fraction(0.0, qz, f_ec) <= 0:
        return float("nan")
    if secret_fraction(0.5, qz, f_ec) > 0:
        return 0.5
    return float(brentq(lambda q: secret_fraction(q, qz, f_ec), 0.0, 0.5, xtol=1e-12))


def binary_entropy_array(values: np.ndarray) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if np.any((values < 0) | (values > 1)):
        raise ValueError("Argumentos da entropia binária fora de [0, 1]")
    return (entr(values) + entr(1.0 - values)) / math.log(2.0)
