//! Double curve sums of model systems and the geodesics they trace out.

use super::models::{line_id, LatticeWindow};
use super::{Model, SurfaceSystem, SystemError};

fn position(system: &SurfaceSystem, v: usize) -> Result<(i64, i64), SystemError> {
    let id = system.id(v);
    let parsed = match system.model() {
        Model::Line { .. } => id.strip_prefix('u').and_then(|n| n.parse().ok()).map(|n| (n, 0)),
        Model::Lattice { .. } => LatticeWindow::coords(id),
        Model::Explicit => return Err(SystemError::Unsupported),
    };
    parsed.ok_or_else(|| SystemError::ContractBreach(format!("{id:?} is not a model vertex")))
}

fn at_position(system: &SurfaceSystem, (a, b): (i64, i64)) -> Result<usize, SystemError> {
    match system.model() {
        Model::Line { .. } => system.vertex(&line_id(a)),
        _ => system.vertex(&LatticeWindow::id(a, b)),
    }
}

/// One lattice step from the origin toward `(da, db)`: diagonal when the
/// signs agree, otherwise along the longer coordinate (the first on a tie).
fn lattice_step(da: i64, db: i64) -> (i64, i64) {
    if da.signum() * db.signum() >= 0 {
        (da.signum(), db.signum())
    } else if da.abs() >= db.abs() {
        (da.signum(), 0)
    } else {
        (0, db.signum())
    }
}

pub(super) fn double_curve_sum(system: &SurfaceSystem, u: usize, v: usize) -> Result<(usize, usize), SystemError> {
    system.vertex_check(u)?;
    system.vertex_check(v)?;
    if !system.capabilities().supports_dcs {
        return Err(SystemError::Unsupported);
    }
    if system.covering_spread(u, v)? == 0 {
        return Err(SystemError::NothingToSum(system.id(u).to_owned(), system.id(v).to_owned()));
    }
    let (p, q) = (position(system, u)?, position(system, v)?);
    let s = match system.model() {
        Model::Line { .. } => ((q.0 - p.0).signum(), 0),
        _ => lattice_step(q.0 - p.0, q.1 - p.1),
    };
    let minus = at_position(system, (q.0 - s.0, q.1 - s.1))?;
    let plus = at_position(system, (p.0 + s.0, p.1 + s.1))?;
    Ok((minus, plus))
}

/// Runs the double curve sum of `u` and `v` and checks what every backend
/// owes its callers: `minus` is disjoint from `v` and closer to `u`; for
/// covering spread 1 both outputs are disjoint from both inputs; under
/// strict descent the summed complexity drops.
pub fn check_dcs_contract(system: &SurfaceSystem, u: usize, v: usize) -> Result<(usize, usize), SystemError> {
    let (minus, plus) = system.double_curve_sum(u, v)?;
    let breach = |what: String| Err(SystemError::ContractBreach(what));
    let (id, cs) = (|x: usize| system.id(x).to_owned(), system.covering_spread(u, v)?);
    if !system.disjoint(minus, v) {
        return breach(format!("minus {} meets {}", id(minus), id(v)));
    }
    let closer = if minus == u { 0 } else { system.covering_spread(u, minus)? };
    if closer + 1 > cs {
        return breach(format!("cs({}, {}) = {closer} is not below {cs}", id(u), id(minus)));
    }
    if cs == 1 {
        for w in [minus, plus] {
            if !system.disjoint(w, u) || !system.disjoint(w, v) {
                return breach(format!("{} is not disjoint from both {} and {}", id(w), id(u), id(v)));
            }
        }
    }
    if system.capabilities().strict_descent {
        let (after, before) =
            (system.complexity(minus) + system.complexity(plus), system.complexity(u) + system.complexity(v));
        if after >= before {
            return breach(format!("complexity {after:?} of the sum is not below {before:?}"));
        }
    }
    Ok((minus, plus))
}

pub(super) fn geodesic(system: &SurfaceSystem, u: usize, v: usize) -> Result<Vec<usize>, SystemError> {
    system.vertex_check(u)?;
    system.vertex_check(v)?;
    if u == v {
        return Ok(vec![u]);
    }
    let target = system.covering_spread(u, v)?;
    if !system.capabilities().supports_dcs {
        return system.build_complex(1).shortest_path(v, u)?.ok_or(SystemError::Disconnected);
    }
    let mut path = vec![v];
    let mut cur = v;
    let mut cs = target;
    while cs > 0 {
        let (minus, _) = system.double_curve_sum(u, cur)?;
        if !system.disjoint(minus, cur) {
            return Err(SystemError::ContractBreach(format!("{} meets {}", system.id(minus), system.id(cur))));
        }
        let next = if minus == u { 0 } else { system.covering_spread(u, minus)? };
        if next >= cs {
            return Err(SystemError::ContractBreach(format!(
                "covering spread to {} did not decrease at {}",
                system.id(u),
                system.id(minus)
            )));
        }
        if minus == u {
            // the sum jumped straight to u; the path is then too short
            break;
        }
        path.push(minus);
        cur = minus;
        cs = next;
    }
    path.push(u);
    if path.len() as u64 != target + 2 {
        return Err(SystemError::ContractBreach(format!(
            "path of {} edges between {} and {} where covering spread gives {}",
            path.len() - 1,
            system.id(v),
            system.id(u),
            target + 1
        )));
    }
    Ok(path)
}
