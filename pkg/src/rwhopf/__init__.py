"""Exact F2 Hopf-algebra machinery and Ravenel-Wilson dimension bookkeeping."""

from rwhopf.series import BiSeries, TruncSeries, partitions, product_pow

__version__ = "0.1.0"

__all__ = ["BiSeries", "TruncSeries", "partitions", "product_pow", "__version__"]
