"""Circle-method diagnostics for almost periodic integer sets.

Modules:

- ``setgen``: k-free, Beatty, periodic and multiplicative sets as bit vectors.
- ``arcs``: Farey and frequency-sequence major arcs, arc algebra.
- ``expsum``: exponential sums, exact autocorrelation, arc energies.
- ``spectrum``: local densities, extremality sums, Fourier spectra, f_Q approximants.
- ``additive``: representation counts r(n) and main terms.
"""

from .additive import (RationalMainTerm, asymptotic_report, beatty_main_term,
                       rational_main_term, rep_count, rep_count_direct)
from .arcs import (ArcSystem, beatty_major_arcs, beatty_spectrum, complement,
                   farey_centers, farey_major_arcs, intersect_arcs, normalize,
                   sequence_major_arcs)
from .expsum import (Autocorrelation, autocorrelation, autocorrelation_bitset,
                     energy_on_arcs, eval_s, minor_arc_ratio)
from .setgen import (IntegerSet, MultiplicativeSpec, combine, density, gen_beatty,
                     gen_kfree, gen_multiplicative, gen_periodic)
from .spectrum import (arc_coefficient, besicovitch_distance, build_fq,
                       extremality_curve, extremality_sum, fourier_coefficient,
                       kfree_coefficient_oracle, kfree_extremality_curve,
                       local_densities, spectrum_scan, wirsing_series)

__version__ = "0.1.0"
