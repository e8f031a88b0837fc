//! Browser bindings. Each export takes plain numbers and returns a JSON
//! string, so the page needs no bundler or generated typings.

use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

use macfb::checkers::{cf_rate_curve, check_thm3, check_thm4, single_rate_capacity};
use macfb::regions::{cl_frontier, cutset_bounds, default_u_card, weight_fan, FeedbackModel};
use macfb::{families, Error, Mac, User};

fn channel(family: &str, param: f64) -> Result<(Mac, macfb::checkers::GroupSpec), Error> {
    match family {
        "erasure-adder" => families::erasure_adder_additive(param, 3),
        "bsc-mac" => families::bsc_mac_additive(param),
        other => Err(Error::Input(format!("unknown family {other:?}"))),
    }
}

fn to_js<T: Serialize>(v: &T) -> Result<String, JsValue> {
    serde_json::to_string(v).map_err(|e| JsValue::from_str(&e.to_string()))
}

fn js_err(e: Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

/// Compress-forward rate of user 1 against the relay mixing weight, on
/// `steps + 1` evenly spaced points of `[0, a_max]`.
#[wasm_bindgen]
pub fn cf_curve(family: &str, param: f64, a_max: f64, steps: usize) -> Result<String, JsValue> {
    let (mac, _) = channel(family, param).map_err(js_err)?;
    let steps = steps.max(1);
    let grid: Vec<f64> = (0..=steps)
        .map(|i| a_max.clamp(0.0, 1.0) * i as f64 / steps as f64)
        .collect();
    let user = User::One;
    let sr = single_rate_capacity(&mac, user, 1e-9);
    let relay = check_thm3(&mac, user, 1e-9);
    let (xs, xb) = match &relay.witness {
        Some(w) => (w.xk_star.clone(), w.xbar_k.clone()),
        None => {
            let xb = mac
                .alphabet(user.other())
                .iter()
                .find(|x| **x != sr.xk_star)
                .cloned()
                .unwrap_or_else(|| sr.xk_star.clone());
            (sr.xk_star.clone(), xb)
        }
    };
    let p_star = sr
        .candidates
        .iter()
        .find(|c| c.xk == xs)
        .map(|c| c.p_star.clone())
        .unwrap_or(sr.p_star.clone());
    let curve = cf_rate_curve(&mac, user, &xs, &xb, &p_star, &grid).map_err(js_err)?;
    to_js(&json!({
        "single_rate": sr.value,
        "relay_condition": relay.holds,
        "curve": curve,
    }))
}

/// Classification of user 1 across `n + 1` evenly spaced parameters in
/// `[0, 1]`.
#[wasm_bindgen]
pub fn classify_sweep(family: &str, n: usize) -> Result<String, JsValue> {
    let n = n.max(1);
    let mut rows = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let param = i as f64 / n as f64;
        let (mac, g) = channel(family, param).map_err(js_err)?;
        let r = check_thm4(&mac, &g, User::One, 1e-9).map_err(js_err)?;
        rows.push(json!({
            "param": param,
            "condition1": r.condition1,
            "condition2": r.condition2,
            "conclusion": r.conclusion,
            "single_rate": r.evidence.single_rate,
            "joint_mi": r.evidence.joint_mi,
            "classes": r.evidence.partition.m,
        }));
    }
    to_js(&rows)
}

/// Inner-bound frontier over a 17-direction fan plus the cut-set values.
#[wasm_bindgen]
pub fn region(family: &str, param: f64, restarts: usize, seed: u32) -> Result<String, JsValue> {
    let (mac, _) = channel(family, param).map_err(js_err)?;
    let fan = weight_fan(17);
    let inner =
        cl_frontier(&mac, &fan, restarts, default_u_card(&mac), seed as u64).map_err(js_err)?;
    let pf = cutset_bounds(&mac, FeedbackModel::PF, 1e-9);
    let two_look = cutset_bounds(&mac, FeedbackModel::IF, 1e-9);
    to_js(&json!({
        "inner": inner.points.iter().map(|p| [p.rates.r1, p.rates.r2]).collect::<Vec<_>>(),
        "cutset_pf": pf,
        "cutset_if": two_look,
    }))
}
