"""Loss functions with analytic gradients and their finite-difference verifier."""
from .center_losses import ccl, inter_loss, intra_loss
from .classification import softmax_ce
from .cosine import cosine, cosine_matrix, cosine_rows
from .gradcheck import finite_diff_check, loss_gradchecks
from .objective import total_loss
from .trihard import select_hardest, trihard, triplet_hinge

__all__ = [
    'ccl', 'inter_loss', 'intra_loss', 'softmax_ce', 'cosine', 'cosine_matrix', 'cosine_rows',
    'finite_diff_check', 'loss_gradchecks', 'total_loss', 'select_hardest', 'trihard', 'triplet_hinge',
]
