from .base_oracle import BaseOracle

MODES = ("exact", "pit")


def get_oracle(mode: str, trials: int = 20, prng_seed=None) -> BaseOracle:
    """Initialize the oracle for ``mode``."""
    if mode == "exact":
        from .exact_oracle import ExactOracle
        return ExactOracle(trials=trials, prng_seed=prng_seed)
    elif mode == "pit":
        from .pit_oracle import PitOracle
        return PitOracle(trials=trials, prng_seed=prng_seed)
    else:
        raise ValueError(f"Unknown oracle mode: {mode}")
