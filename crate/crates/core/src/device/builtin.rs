// SPDX-License-Identifier: Apache-2.0

use std::path::Path;

use super::{load_device, DeviceError, DeviceModel};

const BUILTIN: &[(&str, &str)] = &[
    ("ibmq_toronto", include_str!("../../devices/ibmq_toronto.json")),
    ("ibmq_seattle", include_str!("../../devices/ibmq_seattle.json")),
    ("rigetti_aspen", include_str!("../../devices/rigetti_aspen.json")),
    ("ionq_aria", include_str!("../../devices/ionq_aria.json")),
    ("quantinuum_h1", include_str!("../../devices/quantinuum_h1.json")),
];

pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    BUILTIN.iter().map(|&(name, _)| name)
}

/// A shipped device by name, or a generated `line:N` / `full:N` device.
pub fn builtin_device(name: &str) -> Option<DeviceModel> {
    if let Some(&(_, json)) = BUILTIN.iter().find(|&&(n, _)| n == name) {
        return Some(load_device(json).expect("embedded device json is valid"));
    }
    let (shape, size) = name.split_once(':')?;
    let n: usize = size.parse().ok().filter(|&n| n > 0)?;
    match shape {
        "line" => Some(DeviceModel::line(n)),
        "full" => Some(DeviceModel::complete(n)),
        _ => None,
    }
}

/// Interprets `spec` as a built-in name first, then as a JSON file path.
pub fn resolve_device(spec: &str) -> Result<DeviceModel, DeviceError> {
    if let Some(d) = builtin_device(spec) {
        return Ok(d);
    }
    let path = Path::new(spec);
    if !path.exists() && !spec.ends_with(".json") {
        return Err(DeviceError::UnknownDevice(spec.to_owned()));
    }
    let text = std::fs::read_to_string(path).map_err(|source| DeviceError::Io {
        path: spec.to_owned(),
        source,
    })?;
    load_device(&text)
}
