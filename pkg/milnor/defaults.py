from __future__ import annotations

default_p = 3
default_n = 3

verify_profiles = (
    "quick",
    "full",
)
default_profile = "quick"

default_workers = 1
default_seed = 0
