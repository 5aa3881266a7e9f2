# Example rings selected by name default to this characteristic.
REGISTRY_CHAR = 7

# Positive integer overriding the worker count.
WORKERS_ENV = "TCLAB_WORKERS"

# Largest sop power tried when looking for an unconditioned strong d-sequence.
USD_POWER_MAX = 4
