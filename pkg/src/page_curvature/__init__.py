"""Numerical curvature engine for oriented Riemannian 4-manifolds."""

from page_curvature.logging import configure_global_logger, log_stage, logger, set_log_metric

__all__ = ["logger", "configure_global_logger", "log_stage", "set_log_metric"]
