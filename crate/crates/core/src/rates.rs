//! Time-dependent rate functions shared by the classical and qubit dynamics.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A scalar rate `r(t)` (units of 1/time).
///
/// JSON form: `{"kind": "constant", "c": 1.0}`,
/// `{"kind": "exp_decay", "c": 1.0, "rate": 0.5}`,
/// `{"kind": "sinusoid", "offset": 0.0, "amplitude": 1.0, "frequency": 1.0}`
/// or `{"kind": "table", "times": [...], "values": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RateFn {
    Constant {
        c: f64,
    },
    /// `c * exp(-rate * t)`.
    ExpDecay {
        c: f64,
        rate: f64,
    },
    /// `offset + amplitude * cos(frequency * t + phase)`, angular frequency.
    Sinusoid {
        offset: f64,
        amplitude: f64,
        frequency: f64,
        #[serde(default)]
        phase: f64,
    },
    /// Piecewise-linear interpolation, held constant outside the table.
    Table {
        times: Vec<f64>,
        values: Vec<f64>,
    },
}

impl RateFn {
    pub fn constant(c: f64) -> Self {
        RateFn::Constant { c }
    }

    pub fn exp_decay(c: f64, rate: f64) -> Self {
        RateFn::ExpDecay { c, rate }
    }

    pub fn sinusoid(offset: f64, amplitude: f64, frequency: f64) -> Self {
        RateFn::Sinusoid {
            offset,
            amplitude,
            frequency,
            phase: 0.0,
        }
    }

    pub fn table(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let r = RateFn::Table { times, values };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |xs: &[f64]| xs.iter().all(|x| x.is_finite());
        let ok = match self {
            RateFn::Constant { c } => c.is_finite(),
            RateFn::ExpDecay { c, rate } => finite(&[*c, *rate]),
            RateFn::Sinusoid {
                offset,
                amplitude,
                frequency,
                phase,
            } => finite(&[*offset, *amplitude, *frequency, *phase]),
            RateFn::Table { times, values } => {
                if times.is_empty() || times.len() != values.len() {
                    return Err(Error::InvalidSchedule(
                        "rate table needs equal, nonzero numbers of times and values".into(),
                    ));
                }
                if times.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::InvalidSchedule(
                        "rate table times must be strictly increasing".into(),
                    ));
                }
                finite(times) && finite(values)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidSchedule("non-finite rate parameter".into()))
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            RateFn::Constant { c } => *c,
            RateFn::ExpDecay { c, rate } => c * (-rate * t).exp(),
            RateFn::Sinusoid {
                offset,
                amplitude,
                frequency,
                phase,
            } => offset + amplitude * (frequency * t + phase).cos(),
            RateFn::Table { times, values } => interpolate(times, values, t),
        }
    }

    /// Exact `int_a^b r(u) du` from the antiderivative.
    pub fn integral(&self, a: f64, b: f64) -> f64 {
        match self {
            RateFn::Table { times, values } => table_integral(times, values, a, b),
            _ => self.antiderivative(b) - self.antiderivative(a),
        }
    }

    fn antiderivative(&self, t: f64) -> f64 {
        match self {
            RateFn::Constant { c } => c * t,
            RateFn::ExpDecay { c, rate } => {
                if *rate == 0.0 {
                    c * t
                } else {
                    // -expm1(-r t) = 1 - e^{-r t}
                    -c * (-rate * t).exp_m1() / rate
                }
            }
            RateFn::Sinusoid {
                offset,
                amplitude,
                frequency,
                phase,
            } => {
                if *frequency == 0.0 {
                    (offset + amplitude * phase.cos()) * t
                } else {
                    offset * t + amplitude * (frequency * t + phase).sin() / frequency
                }
            }
            RateFn::Table { .. } => unreachable!("tables integrate piecewise"),
        }
    }

    /// Times where the function has a kink; quadrature splits there.
    pub fn breakpoints(&self) -> &[f64] {
        match self {
            RateFn::Table { times, .. } => times,
            _ => &[],
        }
    }
}

fn interpolate(times: &[f64], values: &[f64], t: f64) -> f64 {
    let last = times.len() - 1;
    if t <= times[0] {
        return values[0];
    }
    if t >= times[last] {
        return values[last];
    }
    let k = times.partition_point(|&x| x <= t) - 1;
    let w = (t - times[k]) / (times[k + 1] - times[k]);
    values[k] + w * (values[k + 1] - values[k])
}

fn table_integral(times: &[f64], values: &[f64], a: f64, b: f64) -> f64 {
    if b < a {
        return -table_integral(times, values, b, a);
    }
    // Nodes of the piecewise-linear function inside [a, b]; trapezoid is exact.
    let mut nodes = vec![a];
    nodes.extend(times.iter().copied().filter(|&x| x > a && x < b));
    nodes.push(b);
    nodes
        .windows(2)
        .map(|w| {
            0.5 * (w[1] - w[0])
                * (interpolate(times, values, w[0]) + interpolate(times, values, w[1]))
        })
        .sum()
}
