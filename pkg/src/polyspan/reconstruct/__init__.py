"""Oplax functors on spans and polynomials, their law checks and icons."""
from .laws import (check_comult_conditions, check_gregarious, check_oplax_laws, check_pseudo, check_round_trip,
                   image_adjunction, reduce_constraints)
from .oplax import (BUILDERS, ComultCounit, OplaxFunctor, build_poly_oplax, build_polyc_oplax, build_span_oplax,
                    build_spaniso_oplax, corrupt_phi)
from .source import PolySource, SpanSource
from .icons import Icon, check_icon, flip_base, icon_extend, identity_base, mate_inverse, unflip_base
