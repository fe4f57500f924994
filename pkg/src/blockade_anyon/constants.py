"""Golden-mean constants used by the operator dictionary."""

import math

PHI = (1.0 + math.sqrt(5.0)) / 2.0

PHI_INV = 1.0 / PHI
PHI_SQRT = math.sqrt(PHI)
PHI_INV_SQRT = 1.0 / PHI_SQRT
PHI_3_2 = PHI * PHI_SQRT
PHI_INV_3_2 = 1.0 / PHI_3_2
PHI_INV_2 = 1.0 / (PHI * PHI)
PHI_5_2 = PHI * PHI * PHI_SQRT
