//! Built-in spaces. Each preset is the canonical spec text, so `--preset X`
//! and `--spec` on that text are interchangeable.

use super::spec::{parse_spec, SpaceSpec};

#[derive(Debug, Clone, Copy)]
pub struct Preset {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub title: &'static str,
    pub text: &'static str,
    /// Expected points and lines, from counting formulas.
    pub points: usize,
    pub lines: Option<usize>,
}

impl Preset {
    pub fn spec(&self) -> SpaceSpec {
        parse_spec(self.text).expect("preset specs are valid")
    }
}

const W3_2: &str = "\
field p=2 k=1\n\
form kind=alternating dim=4 sigma=0 epsilon=1\n\
row 0 1 0 0\n\
row 1 0 0 0\n\
row 0 0 0 1\n\
row 0 0 1 0\n\
";

const W3_3: &str = "\
field p=3 k=1\n\
form kind=alternating dim=4 sigma=0 epsilon=2\n\
row 0 1 0 0\n\
row 2 0 0 0\n\
row 0 0 0 1\n\
row 0 0 2 0\n\
";

const W5_2: &str = "\
field p=2 k=1\n\
form kind=alternating dim=6 sigma=0 epsilon=1\n\
row 0 1 0 0 0 0\n\
row 1 0 0 0 0 0\n\
row 0 0 0 1 0 0\n\
row 0 0 1 0 0 0\n\
row 0 0 0 0 0 1\n\
row 0 0 0 0 1 0\n\
";

const Q4_2: &str = "\
field p=2 k=1\n\
form kind=quadratic dim=5\n\
row 1 0 0 0 0\n\
row 0 0 1 0 0\n\
row 0 0 0 0 0\n\
row 0 0 0 0 1\n\
row 0 0 0 0 0\n\
";

const Q4_3: &str = "\
field p=3 k=1\n\
form kind=quadratic dim=5\n\
row 1 0 0 0 0\n\
row 0 0 1 0 0\n\
row 0 0 0 0 0\n\
row 0 0 0 0 1\n\
row 0 0 0 0 0\n\
";

const QM5_2: &str = "\
field p=2 k=1\n\
form kind=quadratic dim=6\n\
row 1 1 0 0 0 0\n\
row 0 1 0 0 0 0\n\
row 0 0 0 1 0 0\n\
row 0 0 0 0 0 0\n\
row 0 0 0 0 0 1\n\
row 0 0 0 0 0 0\n\
";

const QP5_2: &str = "\
field p=2 k=1\n\
form kind=quadratic dim=6\n\
row 0 1 0 0 0 0\n\
row 0 0 0 0 0 0\n\
row 0 0 0 1 0 0\n\
row 0 0 0 0 0 0\n\
row 0 0 0 0 0 1\n\
row 0 0 0 0 0 0\n\
";

const Q6_2: &str = "\
field p=2 k=1\n\
form kind=quadratic dim=7\n\
row 1 0 0 0 0 0 0\n\
row 0 0 1 0 0 0 0\n\
row 0 0 0 0 0 0 0\n\
row 0 0 0 0 1 0 0\n\
row 0 0 0 0 0 0 0\n\
row 0 0 0 0 0 0 1\n\
row 0 0 0 0 0 0 0\n\
";

const H3_4: &str = "\
field p=2 k=2\n\
form kind=hermitian dim=4 sigma=1 epsilon=1\n\
row 1 0 0 0\n\
row 0 1 0 0\n\
row 0 0 1 0\n\
row 0 0 0 1\n\
";

const H4_4: &str = "\
field p=2 k=2\n\
form kind=hermitian dim=5 sigma=1 epsilon=1\n\
row 1 0 0 0 0\n\
row 0 1 0 0 0\n\
row 0 0 1 0 0\n\
row 0 0 0 1 0\n\
row 0 0 0 0 1\n\
";

const H3_9: &str = "\
field p=3 k=2\n\
form kind=hermitian dim=4 sigma=1 epsilon=1\n\
row 1 0 0 0\n\
row 0 1 0 0\n\
row 0 0 1 0\n\
row 0 0 0 1\n\
";

const GRID_2: &str = "\
field p=2 k=1\n\
form kind=quadratic dim=4\n\
row 0 1 0 0\n\
row 0 0 0 0\n\
row 0 0 0 1\n\
row 0 0 0 0\n\
";

const GRID_3: &str = "\
field p=3 k=1\n\
form kind=quadratic dim=4\n\
row 0 1 0 0\n\
row 0 0 0 0\n\
row 0 0 0 1\n\
row 0 0 0 0\n\
";

pub const PRESETS: &[Preset] = &[
    Preset { name: "W3_2", aliases: &[], title: "W(3,2)", text: W3_2, points: 15, lines: Some(15) },
    Preset { name: "W3_3", aliases: &["Sp4_3"], title: "W(3,3)", text: W3_3, points: 40, lines: Some(40) },
    Preset { name: "W5_2", aliases: &[], title: "W(5,2)", text: W5_2, points: 63, lines: Some(315) },
    Preset { name: "Q4_2", aliases: &[], title: "Q(4,2)", text: Q4_2, points: 15, lines: Some(15) },
    Preset { name: "Q4_3", aliases: &[], title: "Q(4,3)", text: Q4_3, points: 40, lines: Some(40) },
    Preset { name: "Qm5_2", aliases: &[], title: "Q-(5,2)", text: QM5_2, points: 27, lines: Some(45) },
    Preset { name: "Qp5_2", aliases: &[], title: "Q+(5,2)", text: QP5_2, points: 35, lines: Some(105) },
    Preset { name: "Q6_2", aliases: &[], title: "Q(6,2)", text: Q6_2, points: 63, lines: Some(315) },
    Preset { name: "H3_4", aliases: &[], title: "H(3,4)", text: H3_4, points: 45, lines: Some(27) },
    Preset { name: "H4_4", aliases: &[], title: "H(4,4)", text: H4_4, points: 165, lines: Some(297) },
    Preset { name: "H3_9", aliases: &[], title: "H(3,9)", text: H3_9, points: 280, lines: Some(112) },
    Preset { name: "GRID_2", aliases: &["Qp3_2"], title: "Q+(3,2)", text: GRID_2, points: 9, lines: Some(6) },
    Preset { name: "GRID_3", aliases: &["Qp3_3"], title: "Q+(3,3)", text: GRID_3, points: 16, lines: Some(8) },
];

pub fn preset(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name.eq_ignore_ascii_case(name) || p.aliases.iter().any(|a| a.eq_ignore_ascii_case(name)))
}

pub fn preset_names() -> Vec<&'static str> {
    PRESETS.iter().map(|p| p.name).collect()
}
