"""Gaussian radial-basis-function network with greedy incremental training.

Hidden units are Gaussians exp(-(r/spread)^2) centered on selected training
inputs; the output layer is linear with a bias and is re-solved by least
squares after every center insertion. Training stops when the summed squared
error falls to the configured goal, the neuron budget is reached, or every
training input has been consumed as a center.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

# Relative singular-value threshold for the rank-revealing least-squares
# solve; nearly collinear activation columns degrade gracefully.
_LSTSQ_RCOND = 1e-12


def gaussian_activation(distance, spread):
    """Gaussian kernel exp(-(distance/spread)^2); accepts scalars or arrays."""
    if spread <= 0:
        raise ValueError(f"spread must be positive, got {spread}")
    d = np.asarray(distance, dtype=np.float64)
    out = np.exp(-np.square(d / spread))
    return float(out) if np.isscalar(distance) or d.ndim == 0 else out


@dataclass(frozen=True)
class TrainConfig:
    """Stopping rules and kernel width for incremental training."""

    sse_goal: float
    max_neurons: int
    spread: float

    def __post_init__(self):
        if self.sse_goal < 0:
            raise ValueError(f"sse_goal must be >= 0, got {self.sse_goal}")
        if self.max_neurons < 1:
            raise ValueError(f"max_neurons must be >= 1, got {self.max_neurons}")
        if self.spread <= 0:
            raise ValueError(f"spread must be positive, got {self.spread}")


@dataclass(frozen=True)
class RbfNetwork:
    """Trained network: Gaussian centers plus linear output layer.

    centers: (k, d); output_weights: (k, output_dim); output_bias: (output_dim,).
    """

    centers: np.ndarray
    spread: float
    output_weights: np.ndarray
    output_bias: np.ndarray

    def __post_init__(self):
        c = np.atleast_2d(np.asarray(self.centers, dtype=np.float64))
        w = np.atleast_2d(np.asarray(self.output_weights, dtype=np.float64))
        b = np.asarray(self.output_bias, dtype=np.float64).ravel()
        if self.spread <= 0:
            raise ValueError(f"spread must be positive, got {self.spread}")
        if c.shape[0] == 0:
            c = c.reshape(0, max(1, c.shape[1] if c.ndim == 2 else 1))
        if w.shape[0] != c.shape[0]:
            # allow (0, m) weights passed as empty
            if w.size == 0 and c.shape[0] == 0:
                w = w.reshape(0, b.size)
            else:
                raise ValueError(
                    f"output_weights rows ({w.shape[0]}) must equal number of "
                    f"centers ({c.shape[0]})"
                )
        if w.shape[0] and w.shape[1] != b.size:
            raise ValueError("output_weights columns must match output_bias length")
        for arr in (c, w, b):
            if not np.isfinite(arr).all():
                raise ValueError("network parameters must be finite")
        for name, arr in (("centers", c), ("output_weights", w), ("output_bias", b)):
            arr = np.ascontiguousarray(arr)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def n_centers(self) -> int:
        return self.centers.shape[0]

    @property
    def input_dim(self) -> int:
        return self.centers.shape[1]

    @property
    def output_dim(self) -> int:
        return self.output_bias.size


@dataclass
class TrainTrace:
    """Per-stage record of a training run.

    sse_history[k] is the summed squared error after k centers (k = 0 is
    the bias-only model). stage_params[k] holds the (output_weights,
    output_bias) solved at stage k, so intermediate-stage predictions can
    be reconstructed; teaching_outputs are the final-stage predictions on
    the training inputs. stop_reason is one of 'sse_goal', 'max_neurons',
    'inputs_exhausted'.
    """

    sse_history: np.ndarray
    teaching_outputs: np.ndarray
    stage_params: list[tuple[np.ndarray, np.ndarray]]
    selected_indices: list[int]
    stop_reason: str


def _activations(X: np.ndarray, centers: np.ndarray, spread: float) -> np.ndarray:
    """Activation matrix, shape (n, k)."""
    if centers.shape[0] == 0:
        return np.empty((X.shape[0], 0), dtype=np.float64)
    sq = ((X[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
    return np.exp(-sq / (spread * spread))


def forward(net: RbfNetwork, inputs) -> np.ndarray:
    """Evaluate the network on one d-vector or a batch of shape (n, d)."""
    x = np.asarray(inputs, dtype=np.float64)
    single = x.ndim == 1
    if single:
        x = x[None, :]
    if net.n_centers and x.shape[1] != net.input_dim:
        raise ValueError(f"input dimension {x.shape[1]} != network dimension {net.input_dim}")
    acts = _activations(x, net.centers, net.spread)
    out = net.output_bias + acts @ net.output_weights
    return out[0] if single else out


def solve_output_weights(design: np.ndarray, targets: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Least-squares output layer for a design matrix with trailing constant column.

    design: (n, k+1) with k activation columns followed by the all-ones
    column; targets: (n, output_dim). Returns (weights, bias) minimizing the
    Frobenius residual; rank-deficient designs fall back to the minimum-norm
    solution (singular values below 1e-12 of the largest are dropped).
    """
    D = np.asarray(design, dtype=np.float64)
    Y = np.asarray(targets, dtype=np.float64)
    if D.ndim != 2 or D.shape[0] < 1:
        raise ValueError("design must be a 2-d matrix with at least one row")
    if Y.ndim == 1:
        Y = Y[:, None]
    if Y.shape[0] != D.shape[0]:
        raise ValueError("design and targets must have the same number of rows")
    if not np.isfinite(D).all() or not np.isfinite(Y).all():
        raise ValueError("design and targets must be finite")
    params, _, _, _ = np.linalg.lstsq(D, Y, rcond=_LSTSQ_RCOND)
    return params[:-1], params[-1]


def train(inputs, targets, config: TrainConfig) -> tuple[RbfNetwork, TrainTrace]:
    """Greedy incremental training.

    Starts from the bias-only model (bias = column means of the targets),
    then repeatedly promotes the not-yet-used training input whose kernel
    column most reduces the summed squared error (ties broken by lowest
    index), re-solving the linear output layer after each insertion. The
    candidate reductions are computed exactly by keeping the candidate
    kernel matrix orthogonalized against the current design, which costs
    O(n^2) memory and O(n^2) time per added neuron. Deterministic:
    identical inputs, targets and config give identical results.
    """
    X = np.asarray(inputs, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    Y = np.asarray(targets, dtype=np.float64)
    if Y.ndim == 1:
        Y = Y[:, None]
    if X.ndim != 2 or Y.ndim != 2:
        raise ValueError("inputs and targets must be 2-d matrices")
    n = X.shape[0]
    if n == 0:
        raise ValueError("training set is empty")
    if Y.shape[0] != n:
        raise ValueError(f"targets rows ({Y.shape[0]}) != inputs rows ({n})")
    if not np.isfinite(X).all() or not np.isfinite(Y).all():
        raise ValueError("inputs and targets must be finite")
    m = Y.shape[1]

    # Solve against mean-centered targets and fold the means back into the
    # bias: identical residuals, but the least-squares stages keep full
    # precision when the signal rides on large position offsets.
    target_means = Y.mean(axis=0)
    Yc = Y - target_means

    bias = target_means.copy()
    residual = Yc.copy()  # == Y - (bias-only predictions)
    sse = float(np.sum(residual * residual))

    # Candidate kernel matrix, built one input dimension at a time to stay
    # within two n*n buffers: column j is the activation column that center
    # X[j] would contribute, reused later to assemble the design.
    sq = np.zeros((n, n))
    for coord in X.T:
        diff = np.subtract.outer(coord, coord)
        diff *= diff
        sq += diff
    sq /= -(config.spread * config.spread)
    cand = np.exp(sq, out=sq)

    # Orthonormal basis of the current design span (bias direction first)
    # and its projections onto every candidate column, kept incrementally
    # so each candidate's exact SSE reduction is one dot product away. The
    # projections of a freshly added basis vector are folded into the next
    # iteration's single pass over the candidate matrix.
    max_centers = min(config.max_neurons, n)
    basis = np.empty((max_centers + 1, n))
    basis_proj = np.empty((max_centers + 1, n))
    basis[0] = 1.0 / np.sqrt(n)
    basis_proj[0] = basis[0] @ cand
    n_basis = 1
    cand_norm2 = np.einsum("ij,ij->j", cand, cand) - basis_proj[0] ** 2
    pending: np.ndarray | None = None

    sse_history = [sse]
    stage_params: list[tuple[np.ndarray, np.ndarray]] = [(np.zeros((0, m)), bias.copy())]
    chosen: list[int] = []
    available = np.ones(n, dtype=bool)
    columns: list[np.ndarray] = []
    ones = np.ones((n, 1))
    weights = np.zeros((0, m))

    while sse > config.sse_goal and len(chosen) < config.max_neurons and available.any():
        if pending is not None:
            passed = cand.T @ np.concatenate([residual, pending[:, None]], axis=1)
            cross = passed[:, :m]
            basis_proj[n_basis] = passed[:, m]
            cand_norm2 -= basis_proj[n_basis] ** 2
            np.maximum(cand_norm2, 0.0, out=cand_norm2)
            n_basis += 1
            pending = None
        else:
            cross = cand.T @ residual
        # Exact SSE drop from adding column c: |c_perp . residual|^2 / |c_perp|^2
        # with c_perp the part of c orthogonal to the current design span.
        B = basis[:n_basis]
        P = basis_proj[:n_basis]
        num = cross - P.T @ (B @ residual)
        scores = np.einsum("ij,ij->i", num, num) / np.maximum(cand_norm2, 1e-300)
        idx = int(np.argmax(np.where(available, scores, -np.inf)))
        chosen.append(idx)
        available[idx] = False

        columns.append(cand[:, idx])
        design = np.column_stack(columns + [ones])

        new_weights, centered_bias = solve_output_weights(design, Yc)
        new_bias = centered_bias + target_means
        new_preds = design[:, :-1] @ new_weights + centered_bias
        new_residual = Yc - new_preds
        new_sse = float(np.sum(new_residual * new_residual))

        if new_sse > sse:
            # Ill-conditioned solve made things worse; the previous solution
            # with zero weight on the new center is still feasible, keep it.
            weights = np.vstack([weights, np.zeros((1, m))])
        else:
            weights, bias = new_weights, new_bias
            residual, sse = new_residual, new_sse
        sse_history.append(sse)
        stage_params.append((weights.copy(), bias.copy()))

        # Orthogonalize the accepted column against the basis (second pass
        # for stability); columns already in span add no new direction.
        v = cand[:, idx] - B.T @ P[:, idx]
        v -= B.T @ (B @ v)
        norm = float(np.linalg.norm(v))
        if norm > 1e-10 * float(np.linalg.norm(cand[:, idx])) and n_basis <= max_centers:
            pending = v / norm
            basis[n_basis] = pending

    if sse <= config.sse_goal:
        stop_reason = "sse_goal"
    elif len(chosen) >= config.max_neurons:
        stop_reason = "max_neurons"
    else:
        stop_reason = "inputs_exhausted"

    net = RbfNetwork(
        centers=X[chosen].reshape(len(chosen), X.shape[1]),
        spread=config.spread,
        output_weights=weights,
        output_bias=bias,
    )
    trace = TrainTrace(
        sse_history=np.asarray(sse_history),
        teaching_outputs=Y - residual,
        stage_params=stage_params,
        selected_indices=chosen,
        stop_reason=stop_reason,
    )
    return net, trace


def stage_network(net: RbfNetwork, trace: TrainTrace, stage: int) -> RbfNetwork:
    """Network as it stood after `stage` centers (stage 0 = bias only)."""
    weights, bias = trace.stage_params[stage]
    return RbfNetwork(
        centers=net.centers[:stage],
        spread=net.spread,
        output_weights=weights,
        output_bias=bias,
    )


def save_network(net: RbfNetwork, path: str | Path) -> None:
    """Serialize a network to JSON with exact float64 round-trip precision."""
    doc = {
        "input_dim": net.input_dim,
        "output_dim": net.output_dim,
        "spread": net.spread,
        "centers": net.centers.tolist(),
        "output_weights": net.output_weights.tolist(),
        "output_bias": net.output_bias.tolist(),
    }
    Path(path).write_text(json.dumps(doc, indent=1), encoding="ascii")


def load_network(path: str | Path) -> RbfNetwork:
    doc = json.loads(Path(path).read_text(encoding="ascii"))
    k = len(doc["centers"])
    centers = np.asarray(doc["centers"], dtype=np.float64).reshape(k, doc["input_dim"])
    weights = np.asarray(doc["output_weights"], dtype=np.float64).reshape(k, doc["output_dim"])
    return RbfNetwork(
        centers=centers,
        spread=float(doc["spread"]),
        output_weights=weights,
        output_bias=np.asarray(doc["output_bias"], dtype=np.float64),
    )
