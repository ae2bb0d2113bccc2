"""Rate and energy efficiency of hybrid and low-resolution-ADC digital
beamforming receivers over multipath MIMO channels."""

from .aqnm import (EffectiveSystem, NumericalError, bussgang_gain, effective_system,
                   error_covariance, quantized_covariance_T, receive_covariance)
from .beams import (AnalogCombiner, BeamCodebook, array_factor, build_codebook,
                    combine, mean_beam_error, minimum_beam_count, select_beams,
                    solve_beam_spacing)
from .channel import (ChannelFrequency, ChannelTaps, default_n_f, draw_pdp_channel,
                      draw_ray_channel, steering_vector, to_frequency)
from .harness import (ArchSpec, ConfigError, PdpModel, RateRecord, RaysModel,
                      ScenarioConfig, calibrate_noise, preset, run_scenario,
                      write_csv)
from .power import FrontendConfig, PowerTable, energy_efficiency, frontend_power
from .quant import (AgcState, GTable, QuantizerSpec, agc_state, distortion,
                    g_function, gtable, optimize_step, quantize)
from .rate import RateResult, hybrid_rate, quantized_rate, waterfilling_rate

__version__ = "0.1.0"
