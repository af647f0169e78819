import os

DEFAULT_MEMORY_BUDGET = 4 * 2**30


def default_workers():
    env = os.environ.get("VMVT_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def resolve(workers=None, memory_budget=None):
    return (workers or default_workers(),
            DEFAULT_MEMORY_BUDGET if memory_budget is None else int(memory_budget))
