from .datasets import generate_dataset
from .model import DenseLayer, ForwardCache, Gradients, MLPModel, backward, forward, init_model, sgd_step
from .trainer import accuracy, compare_epoch_time, gradient_check, loss_and_grad, train

__all__ = [
    "DenseLayer",
    "ForwardCache",
    "Gradients",
    "MLPModel",
    "accuracy",
    "backward",
    "compare_epoch_time",
    "forward",
    "generate_dataset",
    "gradient_check",
    "init_model",
    "loss_and_grad",
    "sgd_step",
    "train",
]
