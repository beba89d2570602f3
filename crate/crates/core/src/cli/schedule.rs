//! Bound schedules: `geometric:start,stop,steps`, `linear:start,stop,steps`,
//! `list:b1,b2,...` or a bare comma-separated list.

use crate::error::{Error, Result};

/// Longest schedule accepted.
pub const MAX_STEPS: usize = 10_000;

pub fn parse_schedule(text: &str) -> Result<Vec<f64>> {
    let text = text.trim();
    let (kind, body) = match text.split_once(':') {
        Some((k, b)) => (k.trim(), b),
        None => ("list", text),
    };
    let values = match kind {
        "list" => body.split(',').map(number).collect::<Result<Vec<_>>>()?,
        "geometric" | "linear" => {
            let parts: Vec<&str> = body.split(',').collect();
            if parts.len() != 3 {
                return Err(Error::Parse(format!("{kind} schedule needs start,stop,steps; got {body:?}")));
            }
            let start = number(parts[0])?;
            let stop = number(parts[1])?;
            let steps: usize = parts[2]
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("invalid step count {:?}", parts[2])))?;
            if steps == 0 || steps > MAX_STEPS {
                return Err(Error::Parse(format!("step count must lie in 1..={MAX_STEPS}")));
            }
            expand(kind == "geometric", start, stop, steps)?
        }
        other => return Err(Error::Parse(format!("unknown schedule kind {other:?}"))),
    };
    if values.is_empty() || values.len() > MAX_STEPS {
        return Err(Error::Parse(format!("schedule must have 1..={MAX_STEPS} entries")));
    }
    if values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Parse("schedule must be strictly increasing".into()));
    }
    Ok(values)
}

fn number(s: &str) -> Result<f64> {
    let s = s.trim();
    let x: f64 = s.parse().map_err(|_| Error::Parse(format!("invalid number {s:?}")))?;
    if !x.is_finite() {
        return Err(Error::Parse(format!("non-finite value {s:?}")));
    }
    Ok(x)
}

fn expand(geometric: bool, start: f64, stop: f64, steps: usize) -> Result<Vec<f64>> {
    if steps == 1 {
        return if start == stop {
            Ok(vec![start])
        } else {
            Err(Error::Parse("a one-step schedule needs start = stop".into()))
        };
    }
    if stop <= start {
        return Err(Error::Parse("schedule stop must exceed start".into()));
    }
    if geometric && start <= 0.0 {
        return Err(Error::Parse("geometric schedules need a positive start".into()));
    }
    let last = (steps - 1) as f64;
    let mut out: Vec<f64> = (0..steps)
        .map(|i| {
            let f = i as f64 / last;
            if geometric {
                // Round to a few significant digits' worth of noise: 10^k stays exact.
                (start.ln() + f * (stop / start).ln()).exp()
            } else {
                start + f * (stop - start)
            }
        })
        .collect();
    out[0] = start;
    out[steps - 1] = stop;
    if geometric {
        for v in out.iter_mut() {
            *v = tidy(*v);
        }
    }
    Ok(out)
}

// Snap values within a few ulps of a number with 12 significant digits onto it,
// so that `geometric:1e3,1e6,4` yields exactly 1000, 10000, ...
fn tidy(x: f64) -> f64 {
    let snapped: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    if ((snapped - x) / x).abs() < 1e-13 {
        snapped
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds() {
        assert_eq!(parse_schedule("geometric:1e3,1e6,4").unwrap(), vec![1e3, 1e4, 1e5, 1e6]);
        assert_eq!(parse_schedule("linear:1,3,5").unwrap(), vec![1.0, 1.5, 2.0, 2.5, 3.0]);
        assert_eq!(parse_schedule("list:4, 9,16").unwrap(), vec![4.0, 9.0, 16.0]);
        assert_eq!(parse_schedule("7").unwrap(), vec![7.0]);
        assert_eq!(parse_schedule("linear:2,2,1").unwrap(), vec![2.0]);
    }

    #[test]
    fn rejects() {
        for bad in ["", "geometric:1,2", "geometric:0,2,3", "linear:3,1,4", "1,1", "2,1", "cubic:1,2,3",
            "linear:1,2,0", "nan", "inf", "linear:1,2,99999999"] {
            assert!(parse_schedule(bad).is_err(), "{bad}");
        }
    }
}
