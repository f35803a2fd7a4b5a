"""Qubit channels as Kraus operator lists: validation, application, Choi state.

A channel is accepted iff its Kraus operators satisfy the completeness
condition sum_i K_i^dag K_i = I and its Choi state is positive semidefinite.
The Choi state here is the normalized (trace-1) two-qubit state obtained by
sending the second half of the first Bell state through the channel; with
that convention a trace-preserving channel always has Alice marginal I/2,
and a unital channel additionally has Bob marginal I/2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import linalg, states
from .linalg import I2, dagger
from .states import TwoQubitState

#: residual tolerance for completeness, unitality, and Choi positivity
EPS_CPTP = 1e-9
MAX_KRAUS = 8


class ChannelValidationError(ValueError):
    """Raised when a Kraus list does not describe a CPTP qubit channel."""

    def __init__(self, message: str, residual: float | None = None,
                 min_eigenvalue: float | None = None):
        super().__init__(message)
        self.residual = residual
        self.min_eigenvalue = min_eigenvalue


@dataclass(frozen=True)
class QubitChannel:
    """Validated qubit channel. Construct via validate()."""

    kraus: tuple[np.ndarray, ...]
    name: str = "channel"
    params: dict = field(default_factory=dict)

    def __repr__(self):  # params may hold arrays; keep repr short
        return f"QubitChannel(name={self.name!r}, kraus={len(self.kraus)}, params={self.params!r})"


def _freeze_kraus(kraus_list) -> tuple[np.ndarray, ...]:
    ops = []
    for k in kraus_list:
        a = np.asarray(k, dtype=complex)
        if a.shape != (2, 2):
            raise ChannelValidationError(f"Kraus operator has shape {a.shape}, expected (2, 2)")
        a = a.copy()
        a.setflags(write=False)
        ops.append(a)
    return tuple(ops)


def completeness_residual(kraus) -> float:
    acc = np.zeros((2, 2), dtype=complex)
    for k in kraus:
        acc += dagger(k) @ k
    return float(np.max(np.abs(acc - I2)))


def unitality_residual(kraus) -> float:
    acc = np.zeros((2, 2), dtype=complex)
    for k in kraus:
        acc += k @ dagger(k)
    return float(np.max(np.abs(acc - I2)))


def choi_matrix(kraus) -> np.ndarray:
    """Trace-1 Choi matrix sum_i (I x K_i) |Phi_1><Phi_1| (I x K_i)^dag."""
    phi = states.BELL_KETS[0]
    rho = np.outer(phi, phi.conj())
    out = np.zeros((4, 4), dtype=complex)
    for k in kraus:
        op = np.kron(I2, k)
        out += op @ rho @ dagger(op)
    return out


def validate(kraus_list, name: str = "channel", params: dict | None = None) -> QubitChannel:
    """Accept a Kraus list as a channel, or raise ChannelValidationError.

    Up to 8 operators are accepted (over-complete input is fine);
    orthogonalize() reduces any channel to its minimal set.
    """
    ops = _freeze_kraus(kraus_list)
    if not 1 <= len(ops) <= MAX_KRAUS:
        raise ChannelValidationError(f"expected 1..{MAX_KRAUS} Kraus operators, got {len(ops)}")
    res = completeness_residual(ops)
    if res > EPS_CPTP:
        raise ChannelValidationError(
            f"completeness violated: ||sum K^dag K - I||_max = {res:.3e}", residual=res)
    min_eig = float(linalg.hermitian_eig(choi_matrix(ops)).eigenvalues[-1])
    if min_eig < -EPS_CPTP:
        raise ChannelValidationError(
            f"Choi matrix not PSD: min eigenvalue {min_eig:.3e}", min_eigenvalue=min_eig)
    return QubitChannel(kraus=ops, name=name, params=dict(params or {}))


def apply(ch: QubitChannel, x) -> np.ndarray:
    """Apply the channel to a single-qubit operator: sum_i K_i x K_i^dag."""
    xm = np.asarray(x, dtype=complex)
    out = np.zeros((2, 2), dtype=complex)
    for k in ch.kraus:
        out += k @ xm @ dagger(k)
    return out


def apply_to_bob(state: TwoQubitState, ch: QubitChannel) -> TwoQubitState:
    """Send the second qubit (Bob's half) through the channel."""
    rho = state.rho
    out = np.zeros((4, 4), dtype=complex)
    for k in ch.kraus:
        op = np.kron(I2, k)
        out += op @ rho @ dagger(op)
    return states.from_density(out)


def choi(ch: QubitChannel) -> TwoQubitState:
    """Choi state of the channel (trace-1 convention)."""
    return states.from_density(choi_matrix(ch.kraus))


@dataclass(frozen=True)
class ChannelReport:
    unital: bool
    choi_rank: int
    choi: TwoQubitState
    trace_preserving_residual: float
    unitality_residual: float


def report(ch: QubitChannel) -> ChannelReport:
    cs = choi(ch)
    return ChannelReport(
        unital=bool(unitality_residual(ch.kraus) <= EPS_CPTP),
        choi_rank=int(linalg.numeric_rank(cs.rho)),
        choi=cs,
        trace_preserving_residual=completeness_residual(ch.kraus),
        unitality_residual=unitality_residual(ch.kraus),
    )


def rotate_kraus(ch: QubitChannel, w) -> QubitChannel:
    """Mix the Kraus list by a unitary: K~_i = sum_j W_ij K_j.

    If w is larger than the Kraus list, the list is padded with zero
    operators. The rotated list represents the same map.
    """
    wm = np.asarray(w, dtype=complex)
    if wm.ndim != 2 or wm.shape[0] != wm.shape[1]:
        raise ValueError(f"mixing matrix must be square, got shape {wm.shape}")
    m = wm.shape[0]
    if m < len(ch.kraus):
        raise ValueError(f"mixing matrix dim {m} smaller than Kraus count {len(ch.kraus)}")
    if np.max(np.abs(wm.conj().T @ wm - np.eye(m))) > 1e-10:
        raise ValueError("mixing matrix is not unitary")
    ops = list(ch.kraus) + [np.zeros((2, 2), dtype=complex)] * (m - len(ch.kraus))
    mixed = [sum(wm[i, j] * ops[j] for j in range(m)) for i in range(m)]
    return validate(mixed, name=ch.name, params=ch.params)


def kraus_from_choi(choi_rho, rank: int | None = None) -> list[np.ndarray]:
    """Rebuild Kraus operators from a trace-1 Choi matrix.

    Each Choi eigenpair (q, chi) with chi = sum_mn a_mn |mn> contributes the
    operator sqrt(2 q) * [a_mn]^T, and the resulting operators are mutually
    orthogonal with Tr(K_i^dag K_j) = 2 q_i delta_ij.
    """
    dec = linalg.hermitian_eig(choi_rho)
    if rank is None:
        rank = linalg.numeric_rank(choi_rho)
    ops = []
    for i in range(max(rank, 1)):
        q = max(float(dec.eigenvalues[i]), 0.0)
        amp = dec.eigenvectors[:, i].reshape(2, 2)
        ops.append(np.sqrt(2.0 * q) * amp.T)
    return ops


def orthogonalize(ch: QubitChannel) -> QubitChannel:
    """Minimal orthogonal Kraus representation (size = Choi rank)."""
    cm = choi_matrix(ch.kraus)
    ops = kraus_from_choi(cm, rank=linalg.numeric_rank(cm))
    return validate(ops, name=ch.name, params=ch.params)


# ---------------------------------------------------------------------------
# Channel-definition JSON document
# ---------------------------------------------------------------------------

def channel_to_jsonable(ch: QubitChannel) -> dict:
    kraus = [[[float(z.real), float(z.imag)] for z in k.reshape(4)] for k in ch.kraus]
    return {"name": ch.name, "kraus": kraus, "params": {k: float(v) for k, v in ch.params.items()}}


def channel_to_json(ch: QubitChannel) -> str:
    return json.dumps(channel_to_jsonable(ch), indent=2)


def channel_from_jsonable(doc: dict) -> QubitChannel:
    try:
        name = str(doc.get("name", "channel"))
        params = {str(k): float(v) for k, v in dict(doc.get("params", {})).items()}
        kraus = []
        for entry in doc["kraus"]:
            flat = [complex(re, im) for re, im in entry]
            if len(flat) != 4:
                raise ValueError(f"Kraus entry must have 4 complex values, got {len(flat)}")
            kraus.append(np.array(flat, dtype=complex).reshape(2, 2))
    except (KeyError, TypeError, ValueError) as exc:
        raise ChannelValidationError(f"malformed channel document: {exc}") from exc
    return validate(kraus, name=name, params=params)


def channel_from_json(text: str) -> QubitChannel:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ChannelValidationError(f"invalid JSON: {exc}") from exc
    return channel_from_jsonable(doc)
