"""Combined objective: classification loss plus the weighted center terms."""
import numpy as np

from ..models.metric import LossOutput


def total_loss(ce: LossOutput, ccl: LossOutput) -> LossOutput:
    """L = L_s + alpha L_intra + beta L_inter, gradients summed element-wise.

    Both outputs must carry gradients with respect to the same rows.
    """
    if ce.grad_features.shape != ccl.grad_features.shape:
        raise ValueError(
            f"gradient shapes differ: {ce.grad_features.shape} vs {ccl.grad_features.shape}"
        )
    if ce.grad_centers is None:
        grad_centers = ccl.grad_centers
    elif ccl.grad_centers is None:
        grad_centers = ce.grad_centers
    else:
        if ce.grad_centers.shape != ccl.grad_centers.shape:
            raise ValueError("center gradient shapes differ")
        grad_centers = ce.grad_centers + ccl.grad_centers
    value = ce.value + ccl.value
    return LossOutput(
        value=value,
        grad_features=ce.grad_features + ccl.grad_features,
        grad_centers=None if grad_centers is None else np.array(grad_centers),
        selected_triplets=ccl.selected_triplets or ce.selected_triplets,
        components={**ce.components, **ccl.components, "total": value},
    )
