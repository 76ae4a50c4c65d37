"""
Reconstrução por máxima verossimilhança.

ρ(t) = T†T / Tr(T†T), com T triangular inferior de diagonal real
(16 parâmetros reais). A intensidade total é desconhecida e foi eliminada
analiticamente (verossimilhança de perfil):

    f(t) = [−Σ n_ν ln q_ν + n_tot ln Σ q_ν] / n_tot + (‖T‖² − 1)²

com q_ν = ‖T ψ_ν‖². O termo quadrático só fixa a escala de T, que não
altera ρ. Gradiente analítico e BFGS do scipy.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize
from scipy.special import gammaln, xlogy

from src.sagnac.quantum.states import (
    DensityMatrix,
    clamp_to_physical,
    fidelity_to_phi_plus,
    purity,
)
from src.sagnac.tomography.linear import invert_vector
from src.sagnac.tomography.schedule import (
    CountRecord,
    TomographyError,
    TomographySchedule,
    counts_vector,
)

logger = logging.getLogger("sagnac.tomography.mle")

DIM = 4
_LOWER = np.tril_indices(DIM, -1)
N_PARAMS = DIM + 2 * len(_LOWER[0])

DEFAULT_MAX_ITER = 5000
DEFAULT_BOOTSTRAP = 100
FTOL = 1e-9
XTOL = 1e-8
GRADIENT_ACCEPT = 1e-6
INIT_EIGEN_FLOOR = 1e-8


@dataclass(frozen=True, eq=False)
class TomographyResult:
    rho: DensityMatrix
    fidelity: float
    purity: float
    log_likelihood: float
    fidelity_sigma: float = 0.0
    purity_sigma: float = 0.0
    converged: bool = True
    iterations: int = 0
    message: str = ""

    def summary(self) -> dict:
        return {
            "fidelity": round(self.fidelity, 10),
            "fidelity_sigma": round(self.fidelity_sigma, 10),
            "purity": round(self.purity, 10),
            "purity_sigma": round(self.purity_sigma, 10),
            "log_likelihood": round(self.log_likelihood, 6),
            "converged": self.converged,
            "iterations": self.iterations,
            "rho": [[[round(re, 12), round(im, 12)] for re, im in row] for row in self.rho.to_report()],
        }


# ---------------------------------------------------------------------------
# Parametrização
# ---------------------------------------------------------------------------


def params_to_t(x: np.ndarray) -> np.ndarray:
    t = np.zeros((DIM, DIM), dtype=complex)
    t[np.diag_indices(DIM)] = x[:DIM]
    n_off = len(_LOWER[0])
    t[_LOWER] = x[DIM : DIM + n_off] + 1j * x[DIM + n_off :]
    return t


def t_to_params(t: np.ndarray) -> np.ndarray:
    lower = t[_LOWER]
    return np.concatenate([np.real(np.diag(t)), lower.real, lower.imag])


def t_to_rho(t: np.ndarray) -> np.ndarray:
    product = t.conj().T @ t
    return product / np.trace(product).real


def rho_to_t(rho: np.ndarray) -> np.ndarray:
    """
    T triangular inferior com T†T = ρ (ρ definida positiva).

    Cholesky de JρJ = LL†, com J a matriz de troca, dá T = J L† J.
    """
    exchange = np.eye(DIM)[::-1]
    lower = np.linalg.cholesky(exchange @ rho @ exchange)
    return exchange @ lower.conj().T @ exchange


# ---------------------------------------------------------------------------
# Verossimilhança
# ---------------------------------------------------------------------------


class ProfileLikelihood:
    """Objetivo normalizado e gradiente analítico para um vetor de contagens."""

    def __init__(self, counts: np.ndarray, kets: np.ndarray):
        self.counts = np.asarray(counts, dtype=float)
        self.kets = kets
        self.total = float(self.counts.sum())
        if self.total <= 0:
            raise TomographyError("Todas as contagens são nulas")
        self.populated = self.counts > 0

    def _projections(self, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        t = params_to_t(x)
        u = self.kets @ t.T  # linha ν = T ψ_ν
        q = np.sum(np.abs(u) ** 2, axis=1)
        return u, q

    def value(self, x: np.ndarray) -> float:
        _, q = self._projections(x)
        n = self.counts[self.populated]
        q_pop = np.maximum(q[self.populated], 1e-300)
        scale = float(x @ x)
        return float(
            (-(n * np.log(q_pop)).sum() + self.total * np.log(q.sum())) / self.total
            + (scale - 1.0) ** 2
        )

    def gradient(self, x: np.ndarray) -> np.ndarray:
        u, q = self._projections(x)
        weights = np.full(q.shape, 1.0 / q.sum())
        weights[self.populated] -= self.counts[self.populated] / (
            self.total * np.maximum(q[self.populated], 1e-300)
        )
        # ∂q_ν/∂T_ij = 2·conj(u_νi)·ψ_νj (Re → parte real de T, −Im → parte imaginária)
        g = 2.0 * (u.conj().T * weights) @ self.kets
        grad = np.concatenate([np.real(np.diag(g)), g[_LOWER].real, -g[_LOWER].imag])
        return grad + 4.0 * (float(x @ x) - 1.0) * x

    def __call__(self, x: np.ndarray) -> Tuple[float, np.ndarray]:
        return self.value(x), self.gradient(x)


def poisson_log_likelihood(
    rho: DensityMatrix | np.ndarray,
    counts: Sequence[CountRecord] | np.ndarray,
    schedule: TomographySchedule,
) -> float:
    """
    Log-verossimilhança de Poisson completa, com intensidade N* = Σn / Σp
    (estimador de máxima verossimilhança da escala).
    """
    matrix = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho)
    n = counts if isinstance(counts, np.ndarray) else counts_vector(counts, schedule)
    kets = schedule.kets()
    p = np.clip(np.real(np.einsum("vi,ij,vj->v", kets.conj(), matrix, kets)), 0.0, None)
    if p.sum() <= 0:
        raise TomographyError("Probabilidades nulas em todas as configurações")
    means = n.sum() / p.sum() * p
    if np.any((means == 0) & (n > 0)):
        return float("-inf")
    return float((xlogy(n, means) - means - gammaln(n + 1)).sum())


# ---------------------------------------------------------------------------
# Otimização
# ---------------------------------------------------------------------------


@dataclass
class _Progress:
    objective: ProfileLikelihood
    last_f: Optional[float] = None
    last_x: Optional[np.ndarray] = None
    iterations: int = 0
    settled: bool = False
    history: List[float] = field(default_factory=list)

    def __call__(self, xk: np.ndarray) -> None:
        self.iterations += 1
        f = self.objective.value(xk)
        if self.last_f is not None and self.last_x is not None:
            improvement = abs(self.last_f - f)
            step = float(np.linalg.norm(xk - self.last_x))
            self.settled = improvement < FTOL and step < XTOL
        self.last_f, self.last_x = f, xk.copy()


def _initial_params(values: np.ndarray, schedule: TomographySchedule) -> np.ndarray:
    start = clamp_to_physical(invert_vector(values, schedule), floor=INIT_EIGEN_FLOOR)
    return t_to_params(rho_to_t(start.entries))


def _fit(
    values: np.ndarray,
    schedule: TomographySchedule,
    x0: np.ndarray,
    max_iter: int,
) -> Tuple[np.ndarray, bool, int, str]:
    objective = ProfileLikelihood(values, schedule.kets())
    progress = _Progress(objective)
    outcome = minimize(
        objective,
        x0,
        jac=True,
        method="BFGS",
        callback=progress,
        options={"maxiter": max_iter, "gtol": 1e-12},
    )
    grad_norm = float(np.linalg.norm(objective.gradient(outcome.x)))
    # status 2 (perda de precisão) no ótimo é aceito quando o gradiente já é desprezível
    converged = bool(outcome.success or progress.settled or (outcome.status == 2 and grad_norm < GRADIENT_ACCEPT))

    best = outcome.x
    if objective.value(x0) < objective.value(best):
        best = x0
    return best, converged, int(outcome.nit), str(outcome.message)


def _metrics(x: np.ndarray) -> Tuple[DensityMatrix, float, float]:
    rho = DensityMatrix(t_to_rho(params_to_t(x)))
    return rho, fidelity_to_phi_plus(rho), purity(rho)


def bootstrap_errors(
    x_hat: np.ndarray,
    total: float,
    schedule: TomographySchedule,
    replicas: int,
    seed: int,
    max_iter: int,
) -> Tuple[float, float]:
    """Bootstrap paramétrico: réplicas Poisson das médias ajustadas."""
    if replicas < 2:
        return 0.0, 0.0
    kets = schedule.kets()
    rho_hat = t_to_rho(params_to_t(x_hat))
    p = np.clip(np.real(np.einsum("vi,ij,vj->v", kets.conj(), rho_hat, kets)), 0.0, None)
    means = total / p.sum() * p

    fidelities, purities = [], []
    for child in np.random.SeedSequence(seed).spawn(replicas):
        resampled = np.random.default_rng(child).poisson(means).astype(float)
        if resampled.sum() == 0:
            continue
        x, _, _, _ = _fit(resampled, schedule, x_hat, max_iter)
        _, f, pur = _metrics(x)
        fidelities.append(f)
        purities.append(pur)
    if len(fidelities) < 2:
        return 0.0, 0.0
    return float(np.std(fidelities, ddof=1)), float(np.std(purities, ddof=1))


def mle_reconstruct(
    counts: Sequence[CountRecord],
    schedule: TomographySchedule,
    *,
    seed: int = 0,
    bootstrap: int = DEFAULT_BOOTSTRAP,
    max_iter: int = DEFAULT_MAX_ITER,
) -> TomographyResult:
    """
    Estado fisicamente válido mais provável para as contagens.

    Não convergência não levanta exceção: o melhor estado encontrado é
    devolvido com ``converged=False``.
    """
    values = counts_vector(counts, schedule)
    if values.sum() <= 0:
        raise TomographyError("Todas as contagens são nulas")

    x0 = _initial_params(values, schedule)
    x_hat, converged, iterations, message = _fit(values, schedule, x0, max_iter)
    rho, fidelity, pur = _metrics(x_hat)
    if not converged:
        logger.warning("MLE não convergiu após %d iterações: %s", iterations, message)

    fidelity_sigma, purity_sigma = bootstrap_errors(
        x_hat, values.sum(), schedule, bootstrap, seed, max_iter
    )
    log_likelihood = poisson_log_likelihood(rho, values, schedule)
    logger.debug(
        "MLE: F=%.5f±%.5f P=%.5f±%.5f (%d iterações)",
        fidelity,
        fidelity_sigma,
        pur,
        purity_sigma,
        iterations,
    )
    return TomographyResult(
        rho=rho,
        fidelity=min(max(fidelity, 0.0), 1.0),
        purity=min(max(pur, 0.0), 1.0),
        log_likelihood=log_likelihood,
        fidelity_sigma=fidelity_sigma,
        purity_sigma=purity_sigma,
        converged=converged,
        iterations=iterations,
        message=message,
    )
