//! Reports for the bundled corpus are deterministic and match the blessed
//! copies in `corpus/golden`. Set `UPDATE_GOLDEN=1` to rewrite them.

mod common;

use arcsos::cli::{emit, run_text, run_verify, Command, Format, Overrides};

const CASES: &[(&str, Command)] = &[
    ("xsquared", Command::Report),
    ("xsquared", Command::Sos),
    ("ex26_pos", Command::Report),
    ("ex26_neg", Command::Report),
    ("ex26_neg", Command::Gb),
    ("cusp", Command::Report),
    ("cusp", Command::Arc),
    ("cusp", Command::Witness),
    ("cusp_compact", Command::Report),
    ("cusp_theta", Command::Theta),
    ("squiggly", Command::Report),
    ("squiggly", Command::Singular),
    ("squiggly_compact", Command::Report),
    ("circle", Command::Report),
    ("circle_theta", Command::Theta),
    ("circle_lift", Command::Lift),
    ("sphere", Command::Report),
];

fn render(stem: &str, cmd: Command) -> String {
    let path = common::corpus_dir().join(format!("{stem}.prob"));
    let text = std::fs::read_to_string(&path).unwrap();
    let out = run_text(cmd, &text, &Overrides::default()).unwrap();
    assert_eq!(out.exit, 0, "{stem} {}", cmd.name());
    emit(&out.report, Format::Json)
}

#[test]
fn corpus_reports_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let dir = common::corpus_dir().join("golden");
    for &(stem, cmd) in CASES {
        let first = render(stem, cmd);
        let second = render(stem, cmd);
        assert_eq!(first, second, "{stem} {} is not deterministic", cmd.name());
        let golden = dir.join(format!("{stem}.{}.json", cmd.name()));
        if update {
            std::fs::write(&golden, &first).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&golden)
            .unwrap_or_else(|e| panic!("{}: {e} (bless with UPDATE_GOLDEN=1)", golden.display()));
        assert_eq!(first, expected, "{} differs from its golden file", golden.display());
    }
}

#[test]
fn every_problem_file_has_a_golden_report() {
    let dir = common::corpus_dir();
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "prob") {
            let stem = path.file_stem().unwrap().to_str().unwrap().to_string();
            assert!(CASES.iter().any(|(s, _)| *s == stem), "{stem} has no golden case");
        }
    }
}

#[test]
fn golden_reports_reverify() {
    for &(stem, cmd) in CASES {
        let path = common::corpus_dir().join("golden").join(format!("{stem}.{}.json", cmd.name()));
        let Ok(text) = std::fs::read_to_string(&path) else {
            continue;
        };
        let out = run_verify(&text).unwrap();
        assert_eq!(out.exit, 0, "{}: {}", path.display(), out.report);
        assert_eq!(out.report["all_ok"], true);
    }
}
