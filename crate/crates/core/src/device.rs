//! Device description and its flat `section.key = value` config format.
//!
//! ```text
//! # 64-ion tape, 16-slot head
//! device.tape_ions = 64
//! device.head_size = 16
//! noise.gamma = 1e-6
//! noise.epsilon = 0.01
//! router.max_swap_len = 10   # optional, defaults to head_size - 2
//! ```
//!
//! `device.tape_ions`, `device.head_size`, `noise.gamma` and `noise.epsilon`
//! are required; everything else falls back to the documented default.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::noise::NoiseParams;
use crate::router::RouterConfig;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeviceSpec {
    pub tape_ions: usize,
    pub head_size: usize,
    pub router: RouterConfig,
    pub noise: NoiseParams,
}

const REQUIRED: [&str; 4] = [
    "device.tape_ions",
    "device.head_size",
    "noise.gamma",
    "noise.epsilon",
];

const KNOWN: [&str; 14] = [
    "device.tape_ions",
    "device.head_size",
    "router.max_swap_len",
    "router.alpha",
    "router.lookahead_window",
    "noise.gamma",
    "noise.epsilon",
    "noise.k0",
    "noise.n_ref",
    "noise.single_qubit_error",
    "noise.swap_cost_factor",
    "noise.shuttle_rate",
    "noise.ion_spacing",
    "noise.single_qubit_time",
];

impl DeviceSpec {
    /// Default router and noise settings for an `n`-ion tape with an
    /// `l`-slot head.
    pub fn new(tape_ions: usize, head_size: usize) -> Self {
        DeviceSpec {
            tape_ions,
            head_size,
            router: RouterConfig::for_head_size(head_size),
            noise: NoiseParams::default(),
        }
    }

    pub fn with_max_swap_len(mut self, max_swap_len: usize) -> Self {
        self.router.max_swap_len = max_swap_len;
        self
    }

    /// Same device with a different head; `max_swap_len` returns to its
    /// default for the new head.
    pub fn with_head_size(mut self, head_size: usize) -> Self {
        self.head_size = head_size;
        self.router.head_size = head_size;
        self.router.max_swap_len = RouterConfig::default_max_swap_len(head_size);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.router.head_size != self.head_size {
            return Err(Error::Config(format!(
                "router head {} differs from device head {}",
                self.router.head_size, self.head_size
            )));
        }
        if self.tape_ions < 2 {
            return Err(Error::Config("device.tape_ions must be at least 2".into()));
        }
        self.router.validate(self.tape_ions)?;
        self.noise.validate()
    }

    /// Writes every field, defaults included, in the config format.
    pub fn to_config_text(&self) -> String {
        let mut s = String::new();
        let r = &self.router;
        let n = &self.noise;
        let lines: [(&str, String); 14] = [
            ("device.tape_ions", self.tape_ions.to_string()),
            ("device.head_size", self.head_size.to_string()),
            ("router.max_swap_len", r.max_swap_len.to_string()),
            ("router.alpha", format!("{:?}", r.alpha)),
            ("router.lookahead_window", r.lookahead_window.to_string()),
            ("noise.gamma", format!("{:?}", n.gamma_per_us)),
            ("noise.epsilon", format!("{:?}", n.epsilon)),
            ("noise.k0", format!("{:?}", n.k0_quanta)),
            ("noise.n_ref", format!("{:?}", n.n_ref_ions)),
            (
                "noise.single_qubit_error",
                format!("{:?}", n.single_qubit_error),
            ),
            ("noise.swap_cost_factor", n.swap_cost_factor.to_string()),
            (
                "noise.shuttle_rate",
                format!("{:?}", n.shuttle_rate_um_per_us),
            ),
            ("noise.ion_spacing", format!("{:?}", n.ion_spacing_um)),
            (
                "noise.single_qubit_time",
                format!("{:?}", n.single_qubit_time_us),
            ),
        ];
        for (k, v) in lines {
            let _ = writeln!(s, "{k} = {v}");
        }
        s
    }
}

fn value<T: FromStr>(map: &BTreeMap<String, (usize, String)>, key: &str) -> Result<Option<T>>
where
    T::Err: std::fmt::Display,
{
    match map.get(key) {
        None => Ok(None),
        Some((line, raw)) => raw
            .parse()
            .map(Some)
            .map_err(|e| Error::Config(format!("{key} = {raw}: {e} (line {line})"))),
    }
}

impl FromStr for DeviceSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut map: BTreeMap<String, (usize, String)> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("expected `section.key = value`, line {line_no}"))
            })?;
            let (k, v) = (k.trim(), v.trim());
            if !KNOWN.contains(&k) {
                return Err(Error::Config(format!("unknown key `{k}`, line {line_no}")));
            }
            if map
                .insert(k.to_string(), (line_no, v.to_string()))
                .is_some()
            {
                return Err(Error::Config(format!(
                    "duplicate key `{k}`, line {line_no}"
                )));
            }
        }
        if let Some(missing) = REQUIRED.iter().find(|k| !map.contains_key(**k)) {
            return Err(Error::Config(format!("missing required key `{missing}`")));
        }

        let tape_ions: usize = value(&map, "device.tape_ions")?.expect("required");
        let head_size: usize = value(&map, "device.head_size")?.expect("required");
        let mut spec = DeviceSpec::new(tape_ions, head_size);
        let r = &mut spec.router;
        if let Some(v) = value(&map, "router.max_swap_len")? {
            r.max_swap_len = v;
        }
        if let Some(v) = value(&map, "router.alpha")? {
            r.alpha = v;
        }
        if let Some(v) = value(&map, "router.lookahead_window")? {
            r.lookahead_window = v;
        }
        let n = &mut spec.noise;
        n.gamma_per_us = value(&map, "noise.gamma")?.expect("required");
        n.epsilon = value(&map, "noise.epsilon")?.expect("required");
        macro_rules! optional {
            ($key:literal => $field:expr) => {
                if let Some(v) = value(&map, $key)? {
                    $field = v;
                }
            };
        }
        optional!("noise.k0" => n.k0_quanta);
        optional!("noise.n_ref" => n.n_ref_ions);
        optional!("noise.single_qubit_error" => n.single_qubit_error);
        optional!("noise.swap_cost_factor" => n.swap_cost_factor);
        optional!("noise.shuttle_rate" => n.shuttle_rate_um_per_us);
        optional!("noise.ion_spacing" => n.ion_spacing_um);
        optional!("noise.single_qubit_time" => n.single_qubit_time_us);

        spec.validate()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str =
        "device.tape_ions = 64\ndevice.head_size = 16\nnoise.gamma = 1e-6\nnoise.epsilon = 0.01\n";

    #[test]
    fn minimal_config_fills_defaults() {
        let d: DeviceSpec = MINIMAL.parse().unwrap();
        assert_eq!(d, DeviceSpec::new(64, 16));
        assert_eq!(d.router.max_swap_len, 14);
    }

    #[test]
    fn full_text_round_trips() {
        let mut d = DeviceSpec::new(40, 8).with_max_swap_len(5);
        d.noise.k0_quanta = 0.5;
        d.noise.gamma_per_us = 3.3e-7;
        let back: DeviceSpec = d.to_config_text().parse().unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = format!("# device\n\n{MINIMAL}router.alpha = 0.25 # steeper\n");
        let d: DeviceSpec = text.parse().unwrap();
        assert_eq!(d.router.alpha, 0.25);
    }

    #[test]
    fn rejects_bad_input() {
        let missing = "device.tape_ions = 64\ndevice.head_size = 16\nnoise.gamma = 1e-6\n";
        assert!(missing
            .parse::<DeviceSpec>()
            .unwrap_err()
            .to_string()
            .contains("noise.epsilon"));
        let unknown = format!("{MINIMAL}noise.colour = red\n");
        assert!(unknown.parse::<DeviceSpec>().is_err());
        let dup = format!("{MINIMAL}device.head_size = 8\n");
        assert!(dup.parse::<DeviceSpec>().is_err());
        let big_head = MINIMAL.replace("= 16", "= 65");
        assert!(big_head.parse::<DeviceSpec>().is_err());
        let bad_msl = format!("{MINIMAL}router.max_swap_len = 16\n");
        assert!(bad_msl.parse::<DeviceSpec>().is_err());
    }
}
