#![allow(dead_code)]

use std::path::PathBuf;

/// Golden cases: file name and arguments after the program name.
pub const CASES: &[(&str, &[&str])] = &[
    (
        "dispersion_circular_te11.json",
        &[
            "dispersion",
            "--geometry",
            "circular",
            "--radius",
            "0.01",
            "--mode",
            "TE11",
            "--freq",
            "15e9",
        ],
    ),
    (
        "dispersion_wr90_sweep.csv",
        &[
            "dispersion",
            "--a",
            "0.02286",
            "--b",
            "0.01016",
            "--mode",
            "TE10",
            "--freq",
            "5e9",
            "--freq-hi",
            "12e9",
            "--samples",
            "8",
            "--format",
            "csv",
        ],
    ),
    (
        "dispersion_cutoff.json",
        &[
            "dispersion",
            "--a",
            "0.02",
            "--b",
            "0.01",
            "--mode",
            "TE10",
            "--omega",
            "47091289182.72133",
        ],
    ),
    (
        "modes_rectangular.csv",
        &[
            "modes", "--a", "0.02286", "--b", "0.01016", "--count", "8", "--format", "csv",
        ],
    ),
    (
        "modes_circular.json",
        &[
            "modes",
            "--geometry",
            "circular",
            "--radius",
            "0.01",
            "--count",
            "6",
        ],
    ),
    (
        "quanta_cell.json",
        &[
            "quanta", "cell", "--a", "0.02286", "--b", "0.01016", "--mode", "TE10", "--freq",
            "10e9",
        ],
    ),
    ("quanta_alpha.json", &["quanta", "alpha"]),
    (
        "quanta_alpha_tm.csv",
        &[
            "quanta",
            "alpha",
            "--kg-over-k0",
            "0.5",
            "--polarization",
            "TM",
            "--format",
            "csv",
        ],
    ),
    (
        "quanta_momentum.json",
        &[
            "quanta",
            "momentum",
            "--freq",
            "1.934e14",
            "--n-phase",
            "1.444",
            "--n-group",
            "1.463",
        ],
    ),
    (
        "packet_equiv.json",
        &["packet", "equiv", "--wavelength", "1.55e-6", "--q", "1000"],
    ),
    (
        "packet_equiv.csv",
        &[
            "packet",
            "equiv",
            "--k0",
            "1e7",
            "--a-var",
            "1e8",
            "--amplitude",
            "2",
            "--format",
            "csv",
        ],
    ),
    ("debroglie_rest.json", &["debroglie", "--velocity", "0"]),
    (
        "debroglie_grid.csv",
        &[
            "debroglie",
            "--grid",
            "9",
            "--format",
            "csv",
            "--precision",
            "8",
        ],
    ),
    (
        "debroglie_photon.json",
        &["debroglie", "--mass", "0", "--wavenumber", "1e7"],
    ),
    (
        "fiber_lp01.json",
        &[
            "fiber",
            "solve",
            "--profile",
            "step",
            "--n1",
            "1.45",
            "--n2",
            "1.44",
            "--core-radius",
            "4e-6",
            "--wavelength",
            "1.55e-6",
            "--l",
            "0",
        ],
    ),
    (
        "fiber_multimode.csv",
        &[
            "fiber",
            "solve",
            "--n1",
            "1.46",
            "--n2",
            "1.44",
            "--core-radius",
            "5e-6",
            "--wavelength",
            "1.0e-6",
            "--format",
            "csv",
        ],
    ),
    (
        "fiber_none.csv",
        &[
            "fiber",
            "solve",
            "--n1",
            "1.45",
            "--n2",
            "1.44",
            "--core-radius",
            "4e-6",
            "--wavelength",
            "1.55e-6",
            "--l",
            "3",
            "--format",
            "csv",
        ],
    ),
    (
        "mdr_nu20.json",
        &[
            "mdr",
            "scan",
            "--nu",
            "20",
            "--index",
            "1.5",
            "--x-range",
            "15:22",
        ],
    ),
    (
        "mdr_nu10.csv",
        &[
            "mdr",
            "scan",
            "--nu",
            "10",
            "--index",
            "1.5",
            "--x-range",
            "7:12",
            "--samples",
            "5000",
            "--format",
            "csv",
        ],
    ),
];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

/// Runs the CLI in-process with the default tolerance.
pub fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fsq").chain(args.iter().copied());
    let code = fsq_cli::run_with_tolerance(argv, None, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}
