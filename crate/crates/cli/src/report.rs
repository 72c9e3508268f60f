//! The `analyze` document.

use entmoments::convexroof::{estimate_roof, RoofConfig};
use entmoments::criteria::{self, CriterionReport};
use entmoments::measures::{self, MeasureMode, MeasureValue, Side};
use entmoments::{moments, State};
use serde_json::{json, Map, Value};

use crate::columns::{self, Column};
use crate::error::Result;

pub fn criterion_json(r: &CriterionReport) -> Value {
    json!({
        "criterion": r.criterion.name(),
        "verdict": r.verdict.name(),
        "statistic": r.statistic,
        "margin": r.margin,
        "detail": {
            "index": r.index,
            "rank": r.rank,
            "separable_certified": r.separable_certified,
            "notes": r.notes,
        },
    })
}

pub fn measure_json(m: &MeasureValue) -> Value {
    json!({ "name": m.name, "value": m.value, "mode": m.mode.name() })
}

#[derive(Clone, Debug, Default)]
pub struct AnalyzeOptions {
    pub tol: Option<f64>,
    pub roof: Option<RoofConfig>,
}

pub fn analyze(state: &State, opts: &AnalyzeOptions) -> Result<Value> {
    let rho = state.density();
    let tol = opts.tol.unwrap_or(criteria::DEFAULT_CRITERION_TOL);
    let pure = matches!(state, State::Pure(_));
    let mut doc = Map::new();
    doc.insert(
        "state".into(),
        json!({
            "dims": rho.dims(),
            "kind": if pure { "pure" } else { "mixed" },
            "purity": rho.purity(),
            "positivity_verified": rho.is_positivity_verified(),
        }),
    );

    let mut crit = Vec::new();
    let mut meas = Vec::new();
    match (state, rho.num_parties()) {
        (_, 2) => {
            for r in criteria::analyze_with(&rho, tol)? {
                crit.push(criterion_json(&r));
            }
            if let State::Pure(psi) = state {
                meas.push(measure_json(&measures::concurrence_pure(psi)?));
                meas.push(measure_json(&measures::emmrs_pure(psi)?));
            } else {
                meas.push(measure_json(&measures::emmrs_direct(&rho, Side::Smaller)?));
            }
            let (m, n) = rho.bipartite_dims()?;
            if m.min(n) >= 2 {
                let b = measures::concurrence_lower_bound(&rho)?;
                doc.insert(
                    "concurrence_bound".into(),
                    json!({ "bound": b.bound, "M1": b.m1, "M2": b.m2 }),
                );
            }
            let p = m * n;
            let tr = moments::realignment_moments(&rho, p)?;
            let tpt = moments::pt_moments(&rho, p)?;
            let a = moments::newton_coefficients(&tpt.values, p)?;
            doc.insert(
                "moments".into(),
                json!({ "realignment": tr.values, "partial_transpose": tpt.values, "coefficients": a.values }),
            );
        }
        (State::Pure(psi), 3) => meas.push(measure_json(&measures::gte_emmrs_pure(psi)?)),
        (State::Mixed(_), 3) => meas.push(measure_json(&measures::gte_emmrs_direct(&rho)?)),
        _ => {}
    }
    if rho.num_parties() == 3 {
        meas.push(measure_json(&measures::gme_concurrence_direct(&rho)?));
        meas.push(measure_json(&measures::concurrence_fill(&rho)?));
    }
    let mut roof = None;
    if let Some(cfg) = &opts.roof {
        if let Some(m) = columns::roof_measure(&rho).filter(|_| rho.is_positivity_verified()) {
            let est = estimate_roof(&rho, m, cfg)?.estimate;
            roof = Some(est);
            meas.push(measure_json(&MeasureValue {
                name: m.name(),
                value: est,
                mode: MeasureMode::ConvexRoofEstimate,
            }));
        }
    }
    doc.insert("criteria".into(), Value::Array(crit));
    doc.insert("measures".into(), Value::Array(meas));

    let cols = Column::defaults();
    let vals = columns::evaluate(state, &cols, None)?;
    let mut colmap: Map<String, Value> = cols
        .iter()
        .zip(vals)
        .map(|(c, v)| (c.name().to_string(), json!(v)))
        .collect();
    if opts.roof.is_some() {
        colmap.insert(Column::RoofEstimate.name().into(), json!(roof));
    }
    doc.insert("columns".into(), Value::Object(colmap));
    Ok(Value::Object(doc))
}
