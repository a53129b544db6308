//! Parsing of value lists given on the command line.
//!
//! Accepted forms:
//!
//! * `0.5`: a single value
//! * `0.1,0.5,2`: an explicit list
//! * `start:stop:count`: `count` evenly spaced values, both ends included
//! * `log:start:stop:count`: `count` logarithmically spaced values

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("malformed value list {input:?}: {reason}")]
pub struct GridError {
    input: String,
    reason: String,
}

fn err(input: &str, reason: impl Into<String>) -> GridError {
    GridError {
        input: input.to_string(),
        reason: reason.into(),
    }
}

fn number(input: &str, field: &str) -> Result<f64, GridError> {
    let v: f64 = field
        .trim()
        .parse()
        .map_err(|_| err(input, format!("{field:?} is not a number")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(err(input, "values must be finite"))
    }
}

pub fn parse_values(input: &str) -> Result<Vec<f64>, GridError> {
    let trimmed = input.trim();
    if trimmed.is_empty() {
        return Err(err(input, "empty"));
    }
    let (log, range) = match trimmed.strip_prefix("log:") {
        Some(rest) => (true, rest),
        None => (false, trimmed),
    };
    if range.contains(':') {
        let fields: Vec<&str> = range.split(':').collect();
        let [start, stop, count] = fields[..] else {
            return Err(err(input, "expected start:stop:count"));
        };
        let start = number(input, start)?;
        let stop = number(input, stop)?;
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| err(input, "count must be a positive integer"))?;
        if count == 0 {
            return Err(err(input, "count must be a positive integer"));
        }
        if count > 1 && stop <= start {
            return Err(err(input, "stop must exceed start"));
        }
        if log {
            if start <= 0.0 {
                return Err(err(input, "log spacing needs positive bounds"));
            }
            let (a, b) = (start.ln(), stop.ln());
            Ok(spaced(a, b, count)
                .into_iter()
                .enumerate()
                .map(|(i, u)| {
                    if i == 0 {
                        start
                    } else if i + 1 == count {
                        stop
                    } else {
                        u.exp()
                    }
                })
                .collect())
        } else {
            Ok(spaced(start, stop, count))
        }
    } else if log {
        Err(err(input, "log: prefix needs start:stop:count"))
    } else {
        trimmed.split(',').map(|f| number(input, f)).collect()
    }
}

fn spaced(start: f64, stop: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![start];
    }
    let step = (stop - start) / (count - 1) as f64;
    (0..count)
        .map(|i| {
            if i + 1 == count {
                stop
            } else {
                start + step * i as f64
            }
        })
        .collect()
}

/// Parses a list that must be strictly increasing (τ grids).
pub fn parse_increasing(input: &str) -> Result<Vec<f64>, GridError> {
    let values = parse_values(input)?;
    if values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(err(input, "values must be strictly increasing"));
    }
    Ok(values)
}
