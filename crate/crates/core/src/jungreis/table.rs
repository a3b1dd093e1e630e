//! Laurent coefficients `a_1 ..= a_65` of the inverse Böttcher map of the
//! Mandelbrot complement, as exact numerator/denominator pairs.

/// `(numerator, denominator)` in decimal; index 0 holds `a_1`.
pub(super) const COEFFICIENTS: [(&str, &str); 65] = [
    ("-1", "2"),
    ("1", "8"),
    ("-1", "4"),
    ("15", "128"),
    ("0", "1"),
    ("-47", "1024"),
    ("-1", "16"),
    ("987", "32768"),
    ("0", "1"),
    ("-3673", "262144"),
    ("1", "32"),
    ("-61029", "4194304"),
    ("0", "1"),
    ("-689455", "33554432"),
    ("-21", "512"),
    ("59250963", "2147483648"),
    ("0", "1"),
    ("-164712949", "17179869184"),
    ("39", "2048"),
    ("-2402805839", "274877906944"),
    ("-1", "64"),
    ("-4850812329", "2199023255552"),
    ("29", "2048"),
    ("-18151141041", "70368744177664"),
    ("0", "1"),
    ("3534139462275", "562949953421312"),
    ("-1039", "131072"),
    ("-22045971176589", "9007199254740992"),
    ("-1", "256"),
    ("-750527255965871", "72057594037927936"),
    ("-4579", "524288"),
    ("54146872254247683", "9223372036854775808"),
    ("0", "1"),
    ("-155379776183158669", "73786976294838206464"),
    ("2851", "1048576"),
    ("-6051993294029466699", "1180591620717411303424"),
    ("-1", "1024"),
    ("7704579806709870203", "9444732965739290427392"),
    ("92051", "16777216"),
    ("-403307733528668035403", "302231454903657293676544"),
    ("0", "1"),
    ("1650116480759617184697", "2417851639229258349412352"),
    ("-229813", "67108864"),
    ("36124726440442241978477", "38685626227668133590597632"),
    ("-41", "4096"),
    ("-225851495844149964787753", "309485009821345068724781056"),
    ("564373", "67108864"),
    (
        "-35761228458796476847725737",
        "19807040628566084398385987584",
    ),
    ("0", "1"),
    (
        "362376876750551361794705823",
        "158456325028528675187087900672",
    ),
    ("-29407003", "8589934592"),
    (
        "-6510398483578238274151194427",
        "2535301200456458802993406410752",
    ),
    ("33", "8192"),
    (
        "74815618913797220433481657203",
        "20282409603651670423947251286016",
    ),
    ("-30057875", "34359738368"),
    (
        "-698617278028915809388280344009",
        "649037107316853453566312041152512",
    ),
    ("0", "1"),
    (
        "-8675905413734991085610532783493",
        "5192296858534827628530496329220096",
    ),
    ("-27868893", "68719476736"),
    (
        "-375687870961637050293461860951517",
        "83076749736557242056487941267521536",
    ),
    ("1", "4096"),
    (
        "-1418434432207399687114226995905967",
        "664613997892457936451903530140172288",
    ),
    ("-11847286243", "1099511627776"),
    (
        "1084116104452462070609082665064238307",
        "170141183460469231731687303715884105728",
    ),
    ("0", "1"),
];
