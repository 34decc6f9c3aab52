# config.py

import os

# Paths
BASE_DIR = os.path.dirname(os.path.abspath(__file__))
PLOTS_DIR = os.path.join(BASE_DIR, "plots")

# ---------------------------------------------------------
# 1. ORDERINGS
# ---------------------------------------------------------
ORDER_NAMES = ("rowmajor", "morton", "hilbert", "hybrid")

# Kinds allowed on either side of a hybrid (one nesting level only)
FLAT_ORDER_NAMES = ("rowmajor", "morton", "hilbert")

# Morton indices are held in 64-bit words
MORTON_MAX_BITS = 63

# ---------------------------------------------------------
# 2. CLI CONTRACT
# ---------------------------------------------------------
EXIT_CODES = {
    "ok": 0,
    "io": 1,            # I/O or parse failure
    "invalid": 2,       # invalid arguments / spec / dims
    "verify": 3         # verification failed
}

PATH_FILE_CONFIG = {
    "formats": ("csv", "json", "bin"),
    "default_format": "csv",
    "csv_header": ["rank", "slab", "row", "col"],
    "binary_magic": b"SFC3",
    "binary_version": 1,
    "binary_dtype": "<u4",
    "json_indent": None
}

# ---------------------------------------------------------
# 3. TRAVERSAL BENCHMARK
# ---------------------------------------------------------
BENCH_CONFIG = {
    "seed": 42,
    "repeat": 3,
    "kernels": ("reduce", "stencil"),
    # float64 volume plus gathered copies must stay below this
    "max_bytes": 2 * 1024 ** 3,
    "element_bytes": 8
}

# ---------------------------------------------------------
# 4. PLOTS & LOGGING
# ---------------------------------------------------------
PLOT_CONFIG = {
    "dpi": 120,
    "figsize": (8, 6),
    "cmap": "plasma",
    "bar_color": "#4CAF50"
}

LOG_LEVEL = "WARNING"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
