"""HTTP service wrapping the game computations, plus its request/response models."""
