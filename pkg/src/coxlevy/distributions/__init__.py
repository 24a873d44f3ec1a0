from .gg import GgParams, gg_cdf, gg_density, gg_log_density, gg_sample
from .gig import GigParams, gig_cdf, gig_density, gig_log_density, gig_mode, gig_sample
from .identities import (stable_product_check, weibull_mixed_exponential_check,
                         weibull_mixing_sample)
from .nvmm import (Degenerate, Empirical, GgMixing, GigMixing, MixingLaw, NvmmSpec,
                   OneSidedStable, gh, gvg, mixing_from_dict, nvmm_cdf, nvmm_cf,
                   nvmm_density, nvmm_sample)
from .oracles import (DistributionOracle, cauchy_oracle, gg_oracle, gig_oracle,
                      normal_oracle, nvmm_oracle, stable_oracle)
from .stable import (StableParams, one_sided_moment, stable_cdf, stable_cf, stable_sample,
                     stable_sample_via_mixture, stable_to_s1)
