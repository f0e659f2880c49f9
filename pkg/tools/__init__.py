# tools/__init__.py
"""
Tools module - Euler data, mirror transforms, recovery, closed forms and the localization oracle
"""

from .euler_data import (
    BundleClass,
    BundleSpec,
    InsertionSpec,
    OmegaMonomial,
    classify,
    dimension_check,
    hg_base,
    numerator,
    omega,
    reduced_numerator,
)

from .mirror_transforms import (
    HeightSeries,
    SeriesForm,
    YTable,
    extend_height,
    gauge_exp,
    gauge_unit,
    height_shift,
    mirror_map,
    normalize_pipeline,
    presentation_height,
    transported_height,
)

from .recovery import (
    ExtractionCell,
    InvariantTable,
    compute_insertions,
    extract_cell,
    one_point,
    one_point_descendent,
    read_leading,
    two_point,
)

from .closed_forms import (
    PotentialSeries,
    am_invert,
    am_resum,
    candelas_potential,
    concave_closed_form,
    integrality_report,
    multiple_cover,
)

from .localization_oracle import WeightVector, default_weight_vectors, localize_degree1

# Operation summary, printed as the CLI epilog
OPERATION_DESCRIPTIONS = """
Operations:

1. one_point(bundle, h, D)
   - K_d(H^h) for d = 1..D through the mirror pipeline

2. one_point_descendent(bundle, i, w, D)
   - K_d(tau_w(H^i)); convention set by MIRROR_DESCENDENT_SIGN

3. two_point(bundle, k1, i, psi, D)
   - K_d(H^k1, tau_psi(H^i)); descendent rows follow MIRROR_DESCENDENT_SIGN too

4. candelas_potential(n, D)
   - one-point invariants of O(n+1) over P^n from the classical potential

5. concave_closed_form(bundle, d) / multiple_cover(n, d)
   - closed formulas for concave bundles

6. am_invert(K, m, D)
   - Aspinwall-Morrison eta values; integrality_report checks they are integers

7. localize_degree1(bundle, insertions, weights)
   - degree-1 torus localization, an independent cross-check
"""

__all__ = [
    'BundleClass',
    'BundleSpec',
    'InsertionSpec',
    'OmegaMonomial',
    'classify',
    'dimension_check',
    'hg_base',
    'numerator',
    'omega',
    'reduced_numerator',
    'HeightSeries',
    'SeriesForm',
    'YTable',
    'extend_height',
    'gauge_exp',
    'gauge_unit',
    'height_shift',
    'mirror_map',
    'normalize_pipeline',
    'presentation_height',
    'transported_height',
    'ExtractionCell',
    'InvariantTable',
    'compute_insertions',
    'extract_cell',
    'one_point',
    'one_point_descendent',
    'read_leading',
    'two_point',
    'PotentialSeries',
    'am_invert',
    'am_resum',
    'candelas_potential',
    'concave_closed_form',
    'integrality_report',
    'multiple_cover',
    'WeightVector',
    'default_weight_vectors',
    'localize_degree1',
    'OPERATION_DESCRIPTIONS',
]
