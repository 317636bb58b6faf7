"""
Laço de treino full-batch com seleção do melhor modelo pela acurácia de validação
"""
import time
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from gread.errors import ConfigError, DataError, DivergenceError
from gread.model import Mode, ModelConfig, ModelParams, forward, init_params
from gread.train.backward import loss_and_gradients
from gread.train.loss import accuracy
from gread.train.optim import AdamState, adam_step
from gread.utils.logs import log_message
from gread.utils.seeding import derive_seed

MAX_NONFINITE_EPOCHS = 3

# Fluxos de aleatoriedade derivados da semente do treino
_INIT_STREAM = 0
_EPOCH_STREAM = 1


@dataclass(frozen=True)
class TrainConfig:
    lr: float = 0.01
    weight_decay: float = 0.0
    max_epochs: int = 200
    seed: int = 0
    patience: Optional[int] = None
    frozen: Tuple[str, ...] = ()

    def __post_init__(self):
        if not np.isfinite(self.lr) or self.lr <= 0:
            raise ConfigError(f"lr deve ser positivo, recebido {self.lr}")
        if self.weight_decay < 0:
            raise ConfigError(f"weight_decay deve ser >= 0, recebido {self.weight_decay}")
        if self.max_epochs < 0:
            raise ConfigError(f"max_epochs deve ser >= 0, recebido {self.max_epochs}")
        if self.patience is not None and self.patience < 1:
            raise ConfigError(f"patience deve ser >= 1, recebido {self.patience}")
        object.__setattr__(self, 'frozen', tuple(self.frozen))


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    train_loss: float
    val_acc: float
    test_acc: float


@dataclass(eq=False)
class FitResult:
    best_params: ModelParams
    history: List[EpochRecord] = field(default_factory=list)
    best_epoch: int = 0

    @property
    def best_val_acc(self) -> float:
        for record in self.history:
            if record.epoch == self.best_epoch:
                return record.val_acc
        return float('nan')


def _split_accuracy(logits, data, name):
    if not np.any(data.mask(name)):
        return float('nan')
    return accuracy(logits, data.labels, data.mask(name))


def evaluate(cfg: ModelConfig, params: ModelParams, data, name: str = "test") -> float:
    logits, _ = forward(cfg, params, data, Mode.eval(), trace=False)
    return _split_accuracy(logits, data, name)


def fit(mcfg: ModelConfig, tcfg: TrainConfig, data, init: Optional[ModelParams] = None) -> FitResult:
    """Treina por até max_epochs épocas e devolve θ* (melhor val_acc; empates ficam com a época anterior)"""
    if not np.any(data.train_mask) or not np.any(data.val_mask):
        raise DataError("Treino exige máscaras de treino e validação não vazias")
    if data.n_classes > mcfg.n_classes:
        raise ConfigError(f"Dataset tem {data.n_classes} classes, modelo configurado para {mcfg.n_classes}")
    unknown = [name for name in tcfg.frozen if name not in ("enc_w1", "enc_b1", "enc_w2", "enc_b2", "out_w",
                                                           "out_b", "attn_w_key", "attn_w_query",
                                                           "alpha", "beta")]
    if unknown:
        raise ConfigError(f"Parâmetro congelado desconhecido: {unknown[0]}")

    params = init if init is not None else init_params(mcfg, data.n_features, data.n_nodes,
                                                       derive_seed(tcfg.seed, _INIT_STREAM))
    result = FitResult(params.copy())
    state = AdamState.zeros(params)
    best_val = None
    stale = 0
    nonfinite = 0

    for epoch in range(1, tcfg.max_epochs + 1):
        started = time.perf_counter()
        try:
            loss, grads = loss_and_gradients(mcfg, params, data, derive_seed(tcfg.seed, _EPOCH_STREAM, epoch))
            if not np.isfinite(loss):
                raise DivergenceError(0, "perda não finita")
            stepped, stepped_state = adam_step(state, params, grads, tcfg, tcfg.frozen)
            logits, _ = forward(mcfg, stepped, data, Mode.eval(), trace=False)
        except DivergenceError as e:
            nonfinite += 1
            log_message(f"[TRAIN] Época {epoch} não finita ({nonfinite}/{MAX_NONFINITE_EPOCHS}): {e}", is_error=True)
            if nonfinite >= MAX_NONFINITE_EPOCHS:
                raise e.with_context(f"treino abortado na época {epoch}") from None
            continue
        params, state = stepped, stepped_state
        nonfinite = 0

        val_acc = _split_accuracy(logits, data, "val")
        test_acc = _split_accuracy(logits, data, "test")
        result.history.append(EpochRecord(epoch, loss, val_acc, test_acc))
        log_message(f"[TRAIN] epoch={epoch} loss={loss:.6f} val_acc={val_acc:.4f} "
                    f"seconds={time.perf_counter() - started:.4f}")

        if best_val is None or val_acc > best_val:
            best_val = val_acc
            result.best_params = params.copy()
            result.best_epoch = epoch
            stale = 0
        else:
            stale += 1
            if tcfg.patience is not None and stale >= tcfg.patience:
                log_message(f"[TRAIN] Parada antecipada na época {epoch} (melhor: {result.best_epoch})")
                break

    return result
