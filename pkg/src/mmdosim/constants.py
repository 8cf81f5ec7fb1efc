"""Physical constants shared by every solver in the package.

The vacuum permittivity is deliberately the rounded 8.85e-12 F/m that the
bundled tissue tables assume, so conductivity/loss-factor conversions
round-trip the tabulated values exactly.  Swapping in the CODATA value
would silently shift every frozen expected value in the test suite.
"""

import math

EPS_0 = 8.85e-12                       # vacuum permittivity [F/m], rounded by table convention
MU_0 = 4.0e-7 * math.pi                # vacuum permeability [H/m]
C_0 = 1.0 / math.sqrt(MU_0 * EPS_0)    # speed of light consistent with EPS_0 [m/s]
ETA_0 = math.sqrt(MU_0 / EPS_0)        # free-space wave impedance [ohm]
