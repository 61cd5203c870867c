from ..models.configs import TrainConfig


def lr_at(epoch: int, cfg: TrainConfig) -> float:
    """Constant lr0 until decay_start_epoch, then exponential decay reaching
    lr0 * decay_base at the final epoch boundary."""
    if epoch < 0:
        raise ValueError(f"epoch must be non-negative, got {epoch}")
    if epoch < cfg.decay_start_epoch or cfg.epochs <= cfg.decay_start_epoch:
        return cfg.lr0
    progress = (epoch - cfg.decay_start_epoch) / (cfg.epochs - cfg.decay_start_epoch)
    return cfg.lr0 * cfg.decay_base ** progress
