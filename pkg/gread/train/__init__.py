# Train module init
from gread.train.loss import cross_entropy, accuracy, log_softmax
from gread.train.backward import GradientBundle, backward, loss_and_gradients, gradient_check
from gread.train.optim import AdamState, adam_step
from gread.train.loop import TrainConfig, EpochRecord, FitResult, evaluate, fit

__all__ = [
    'cross_entropy',
    'accuracy',
    'log_softmax',
    'GradientBundle',
    'backward',
    'loss_and_gradients',
    'gradient_check',
    'AdamState',
    'adam_step',
    'TrainConfig',
    'EpochRecord',
    'FitResult',
    'evaluate',
    'fit',
]
