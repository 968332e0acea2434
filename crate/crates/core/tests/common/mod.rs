//! Inputs shared by the integration tests.
#![allow(dead_code)]

pub const QUARTIC: &str = "-745*x0^3*x2 - 6705*x0^2*x1*x2 - 75990*x0^2*x2^2 - 1788*x0*x1^3 - 36207*x0*x1^2*x2 \
    - 571266*x0*x1*x2^2 - 1827336*x0*x2^3 - 7152*x1^4 - 123819*x1^3*x2 - 1834488*x1^2*x2^2 \
    + 950004*x1*x2^3 - 631522*x2^4";

pub const CUBIC: &str = "X0^2*X1 + X0^2*X2 + X0^2*X3 + X0*X1^2 + X0*X1*X2 + X0*X2^2 + X0*X2*X3 + X0*X3^2 \
    + X1^2*X2 + X1*X2^2 + X1*X2*X3 + X1*X3^2 + X3^3";

pub const QUADRIC: &str = "X0*X3 - X1*X2";

/// `ΣXi² + (ΣXi)²` expanded.
pub const SYMMETRIC_QUADRIC: &str =
    "2*X0^2+2*X1^2+2*X2^2+2*X3^2+2*X0*X1+2*X0*X2+2*X0*X3+2*X1*X2+2*X1*X3+2*X2*X3";

/// `ΣXi³ − (ΣXi)³` expanded.
pub const SYMMETRIC_CUBIC: &str = "-3*X0^2*X1 - 3*X0^2*X2 - 3*X0^2*X3 - 3*X0*X1^2 - 6*X0*X1*X2 - 6*X0*X1*X3 \
    - 3*X0*X2^2 - 6*X0*X2*X3 - 3*X0*X3^2 - 3*X1^2*X2 - 3*X1^2*X3 - 3*X1*X2^2 - 6*X1*X2*X3 - 3*X1*X3^2 \
    - 3*X2^2*X3 - 3*X2*X3^2";

pub const GOLDEN_Q: &str = "646*X0^2 - 6536*X0*X1 - 130084*X0*X2 - 1923144*X0*X3 - 19264*X1^2 - 549500*X1*X2 \
    - 6275840*X1*X3 - 4598186*X2^2 - 78659100*X2*X3 - 143255872*X3^2";

pub const GOLDEN_E: &str = "-87337008*X0^3 + 69815520*X0^2*X1 - 3596033232*X0^2*X2 + 178527014496*X0^2*X3 \
    - 629045568*X0*X1^2 - 13790445696*X0*X1*X2 - 435571233408*X0*X1*X3 - 147774846096*X0*X2^2 \
    + 586163101824*X0*X2*X3 - 162711651196224*X0*X3^2 + 489595536*X1^3 + 31071365856*X1^2*X2 \
    + 625393402416*X1^2*X3 + 676666128096*X1*X2^2 + 20257026499008*X1*X2*X3 + 246651902537904*X1*X3^2 \
    + 4187892749328*X2^3 + 229585773241440*X2^2*X3 + 1868504372517600*X2*X3^2 + 47848070690492688*X3^3";

/// Reference order-one contravariants of `QUARTIC`.
pub const REFERENCE_P: [&str; 3] = [
    "-36028900960739935302662*w0 + 2546868783781471003910*w1 - 207634621252481717745*w2",
    "-167266167826007043607549539758*w0 + 11957094310556682023883659540*w1 - 996728625589442333471190105*w2",
    "-2137425487531362504044770*w0 + 192739452116090004098632*w1 - 4823065036939209106179*w2",
];

pub const GOLDEN_X0_4: &str =
    "-151647765305065905238548582432828758523321832584926229590543175552953534711319971363994226800";
