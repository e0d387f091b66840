//! File output helpers: atomic writes, CSV assembly, and the compact
//! binary trajectory record.
//!
//! Binary layout (all little-endian): magic `b"HLCH"`, `u32` version (1),
//! `u64` L, `f64` dt, `u64` count, then `count` rows of
//! `[t, u(0..=L), v(0..=L)]` as `f64`.

use crate::dynamics::integrator::Trajectory;
use std::io::Write as _;
use std::path::Path;

pub const TRAJ_MAGIC: &[u8; 4] = b"HLCH";
pub const TRAJ_VERSION: u32 = 1;

/// Writes via a sibling temp file and renames into place.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let tmp = path.with_extension("tmp~");
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}

/// CSV rows `t,site,u,v` for every recorded frame.
pub fn trajectory_csv(traj: &Trajectory) -> String {
    let mut out = String::from("t,site,u,v\n");
    for frame in &traj.frames {
        for x in 0..frame.u.len() {
            out.push_str(&format!("{:e},{},{:e},{:e}\n", frame.t, x, frame.u[x], frame.v[x]));
        }
    }
    out
}

/// The compact binary record of a trajectory.
pub fn trajectory_binary(traj: &Trajectory) -> Vec<u8> {
    let l = traj.frames[0].last_site() as u64;
    let count = traj.frames.len() as u64;
    let mut out = Vec::with_capacity(32 + traj.frames.len() * (2 * (l as usize + 1) + 1) * 8);
    out.extend_from_slice(TRAJ_MAGIC);
    out.extend_from_slice(&TRAJ_VERSION.to_le_bytes());
    out.extend_from_slice(&l.to_le_bytes());
    out.extend_from_slice(&traj.dt.to_le_bytes());
    out.extend_from_slice(&count.to_le_bytes());
    for frame in &traj.frames {
        out.extend_from_slice(&frame.t.to_le_bytes());
        for &u in &frame.u {
            out.extend_from_slice(&u.to_le_bytes());
        }
        for &v in &frame.v {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    out
}

/// Parses a binary trajectory record (used by tests and downstream tools).
pub fn parse_trajectory_binary(bytes: &[u8]) -> Option<(u64, f64, Vec<(f64, Vec<f64>, Vec<f64>)>)> {
    if bytes.len() < 32 || &bytes[0..4] != TRAJ_MAGIC {
        return None;
    }
    let version = u32::from_le_bytes(bytes[4..8].try_into().ok()?);
    if version != TRAJ_VERSION {
        return None;
    }
    let l = u64::from_le_bytes(bytes[8..16].try_into().ok()?);
    let dt = f64::from_le_bytes(bytes[16..24].try_into().ok()?);
    let count = u64::from_le_bytes(bytes[24..32].try_into().ok()?);
    let row = (2 * (l as usize + 1) + 1) * 8;
    let mut frames = Vec::with_capacity(count as usize);
    let mut off = 32;
    for _ in 0..count {
        if bytes.len() < off + row {
            return None;
        }
        let t = f64::from_le_bytes(bytes[off..off + 8].try_into().ok()?);
        off += 8;
        let mut u = Vec::with_capacity(l as usize + 1);
        for _ in 0..=l {
            u.push(f64::from_le_bytes(bytes[off..off + 8].try_into().ok()?));
            off += 8;
        }
        let mut v = Vec::with_capacity(l as usize + 1);
        for _ in 0..=l {
            v.push(f64::from_le_bytes(bytes[off..off + 8].try_into().ok()?));
            off += 8;
        }
        frames.push((t, u, v));
    }
    Some((l, dt, frames))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::integrator::evolve_full;
    use crate::dynamics::IntegratorConfig;
    use crate::model::{ChainState, ModelParams};

    fn tiny_traj() -> Trajectory {
        let params = ModelParams::new(1.0, 0.0, 0.5).unwrap();
        let mut s = ChainState::zeros(6);
        s.u[2] = 1.0;
        let cfg = IntegratorConfig::new(0.01, 0.1, 5).unwrap();
        evolve_full(&s, &params, &cfg).unwrap()
    }

    #[test]
    fn binary_round_trip() {
        let traj = tiny_traj();
        let bytes = trajectory_binary(&traj);
        let (l, dt, frames) = parse_trajectory_binary(&bytes).unwrap();
        assert_eq!(l, 6);
        assert_eq!(dt, 0.01);
        assert_eq!(frames.len(), traj.frames.len());
        assert_eq!(frames[1].1, traj.frames[1].u);
        assert_eq!(frames[1].2, traj.frames[1].v);
    }

    #[test]
    fn csv_header_and_rows() {
        let traj = tiny_traj();
        let csv = trajectory_csv(&traj);
        assert!(csv.starts_with("t,site,u,v\n"));
        assert_eq!(csv.lines().count(), 1 + traj.frames.len() * 7);
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = std::env::temp_dir().join("halfline_export_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("out.csv");
        atomic_write(&path, b"one").unwrap();
        atomic_write(&path, b"two").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"two");
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
