"""Antithetical ReID constants."""
from typing import Literal

# Sharpness metric
SHARPNESS_DIVISOR = 1000.0
LUMA_WEIGHTS = (0.299, 0.587, 0.114)

# Antithetical set generation
DOWNSAMPLE_FACTOR_LOW = 0.5
DOWNSAMPLE_FACTOR_HIGH = 0.8
UNSHARP_AMOUNT = 1.5
UNSHARP_SIGMA = 1.0

# RandomErasing defaults
ERASE_PROBABILITY = 0.5
ERASE_AREA_LOW = 0.02
ERASE_AREA_HIGH = 0.4
ERASE_ASPECT_LOW = 0.3
ERASE_ASPECT_HIGH = 3.3
ERASE_MAX_ATTEMPTS = 100

# Synthetic corpus
SYNTH_HEIGHT = 64
SYNTH_WIDTH = 32
SYNTH_BLUR_SIGMA_LOW = 1.0
SYNTH_BLUR_SIGMA_HIGH = 2.5
SYNTH_NUM_CAMERAS = 2

# Loss weights
DEFAULT_ALPHA = 0.1
DEFAULT_BETA = 0.1
DEFAULT_MARGIN = 0.3
TRIHARD_PER_IDENTITY = 4
COSINE_EPS = 1e-12
CENTER_NORM_FLOOR = 1e-8

# Training schedule
DEFAULT_EPOCHS = 60
DEFAULT_BATCH_SIZE = 60
DEFAULT_LR = 0.01
DEFAULT_WEIGHT_DECAY = 5e-4
DEFAULT_MOMENTUM = 0.0
DEFAULT_DECAY_START_EPOCH = 20
DEFAULT_DECAY_BASE = 0.1

# Network
DEFAULT_INPUT_DIMS = (32, 16)
DEFAULT_HIDDEN = (256, 128)
CENTER_INIT_LOW = 0.01
CENTER_INIT_HIGH = 0.1

# Gradient checking
FD_STEP = 1e-5
FD_MAX_COORDS = 200
GRADCHECK_TOLERANCE = 1e-5

# Checkpoints
CHECKPOINT_MAGIC = "antithetic-checkpoint"
CHECKPOINT_VERSION = 1

# Environment
THREADS_ENV_VAR = "ANTITHETIC_THREADS"
ACCEPTANCE_ENV_VAR = "ANTITHETIC_ACCEPTANCE"

PartitionKind = Literal["HR", "LR"]
OriginKind = Literal["original", "antithetical"]
LossMode = Literal["softmax", "softmax+center", "softmax+ccl", "softmax+trihard"]
LOSS_MODES = ["softmax", "softmax+center", "softmax+ccl", "softmax+trihard"]
