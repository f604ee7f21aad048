"""Self-dual codes from a four-block Baumert-Hall array over F2, F2+uF2 and F4+uF4."""

from .analytics import (BinaryCode, DistanceVerdict, Enumerator, PairDistanceInvariant,
                        WeightProfile, classify_enumerator, count_weight, count_weights,
                        design_lambda, enumerate_weight_words, extremal_bound, i16_invariant,
                        is_self_dual, is_type_ii, min_distance_verify, minimum_distance, profile)
from .constructions import (ConditionError, ConditionReport, ConstructionRecipe, ExtensionSpec,
                            Variant, binary_image, build_baumert_hall, build_binary,
                            check_conditions, extend_code, gray_generator_f4u_to_f2u, neighbor,
                            neighbor_vector)
from .matrices import (CirculantSpec, RingMatrix, build_circulant, check_amicable,
                       expand_symmetric_half, lambda_circulant, lambda_shift)
from .rings import (Ring, RingElement, RingVector, as_vector, decode_vector, encode_vector,
                    gray_f2u_to_f2, gray_f4u_to_f2u, gray_to_binary, hex_decode, hex_encode,
                    is_self_inverse_unit, ring_add, ring_mul)

__version__ = "0.1.0"
