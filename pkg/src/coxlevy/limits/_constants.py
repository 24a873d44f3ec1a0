"""Generated by coxlevy.limits.calibrate; do not edit by hand."""

# Rademacher -> Cauchy experiment: the limit CDF is 1/2 + arctan(c x)/pi.
# c = |s| / -log E exp(-U s^2/2), U one-sided 1/2-stable, evaluated by
# quadrature at s in (0.25, 0.5, 1.0, 2.0, 4.0); spread across s: 2.220e-16.
CAUCHY_ARCTAN_FACTOR = 1.414213562373095
CAUCHY_ARCTAN_FACTOR_SPREAD = 2.220446049250313e-16
