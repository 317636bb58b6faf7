"""
Perda de entropia cruzada (softmax estável) e acurácia sobre uma máscara de nós
"""
import numpy as np

from gread.errors import DataError, ShapeError


def _selected(logits, labels, mask):
    logits = np.asarray(logits, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    mask = np.asarray(mask, dtype=bool)
    if logits.ndim != 2 or labels.shape != (logits.shape[0],) or mask.shape != labels.shape:
        raise ShapeError(f"Logits {logits.shape}, rótulos {labels.shape} e máscara {mask.shape} incompatíveis")
    index = np.flatnonzero(mask)
    if index.size == 0:
        raise DataError("Máscara vazia: nenhum nó selecionado")
    return logits, labels, index


def log_softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    return shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))


def cross_entropy(logits, labels, mask):
    """Média de -log softmax(logits)[rótulo] nos nós da máscara

    Retorna (perda, dL/dlogits); o gradiente é zero fora da máscara.
    """
    logits, labels, index = _selected(logits, labels, mask)
    log_probs = log_softmax(logits[index])
    targets = labels[index]
    if targets.max() >= logits.shape[1]:
        raise DataError(f"Rótulo {int(targets.max())} fora das {logits.shape[1]} classes")
    rows = np.arange(index.size)
    loss = float(-log_probs[rows, targets].mean())

    grad = np.exp(log_probs)
    grad[rows, targets] -= 1.0
    dlogits = np.zeros_like(logits)
    dlogits[index] = grad / index.size
    return loss, dlogits


def accuracy(logits, labels, mask) -> float:
    logits, labels, index = _selected(logits, labels, mask)
    predicted = np.argmax(logits[index], axis=1)
    return float(np.mean(predicted == labels[index]))
