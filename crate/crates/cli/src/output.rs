use serde::Serialize;

/// One grid point of a sweep (also the machine-readable form of `period`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub l0: f64,
    pub l: f64,
    pub sigma: f64,
    pub mass: f64,
    pub y0: f64,
    pub period_quadrature: f64,
    pub period_elliptic: Option<f64>,
    pub period_ode: Option<f64>,
    pub upper: f64,
    pub lower_corrected: f64,
    pub lower_printed: f64,
    #[serde(rename = "R")]
    pub r: f64,
    #[serde(rename = "R_bound_corrected")]
    pub r_bound_corrected: f64,
    pub pass: bool,
}

pub const SWEEP_HEADER: &str = "l0,l,sigma,mass,y0,period_quadrature,period_elliptic,period_ode,\
upper,lower_corrected,lower_printed,R,R_bound_corrected,pass";

/// Shortest round-trip decimal form, identical to what the JSON writer emits.
pub fn num(x: f64) -> String {
    serde_json::to_string(&x).expect("finite float")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

impl SweepRow {
    pub fn csv(&self) -> String {
        [
            num(self.l0),
            num(self.l),
            num(self.sigma),
            num(self.mass),
            num(self.y0),
            num(self.period_quadrature),
            opt(self.period_elliptic),
            opt(self.period_ode),
            num(self.upper),
            num(self.lower_corrected),
            num(self.lower_printed),
            num(self.r),
            num(self.r_bound_corrected),
            self.pass.to_string(),
        ]
        .join(",")
    }
}

pub fn rows_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv());
        out.push('\n');
    }
    out
}

pub fn rows_json(rows: &[SweepRow]) -> String {
    let mut out = serde_json::to_string_pretty(rows).expect("rows serialize");
    out.push('\n');
    out
}

/// Seven significant digits for human-readable summaries.
pub fn human(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let digits = 6 - x.abs().log10().floor() as i32;
    if (0..=12).contains(&digits) {
        format!("{:.*}", digits as usize, x)
    } else {
        format!("{x:.6e}")
    }
}
