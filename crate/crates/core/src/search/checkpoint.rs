//! Checkpoint files; the byte layout is in `docs/checkpoint.md`.

use std::io::Write;
use std::path::Path;

use thiserror::Error;

use super::{ScanState, ScanSummary, ScanTask, SearchError};

const MAGIC: &[u8; 4] = b"LFCK";
pub const CHECKPOINT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckpointError {
    #[error("i/o: {0}")]
    Io(String),
    #[error("not a checkpoint file")]
    BadMagic,
    #[error("checkpoint version {found}, expected {expected}")]
    Version { found: u32, expected: u32 },
    #[error("checkpoint is truncated or corrupt")]
    Corrupt,
    #[error("checkpoint belongs to a different task: {0}")]
    TaskMismatch(String),
    #[error("watermark {watermark} outside [{start}, {end}]")]
    Watermark { watermark: u64, start: u64, end: u64 },
}

fn io(e: std::io::Error) -> CheckpointError {
    CheckpointError::Io(e.to_string())
}

fn encode(state: &ScanState) -> Vec<u8> {
    let task = serde_json::to_vec(state.task()).expect("task serializes");
    let summary = serde_json::to_vec(&state.summary).expect("summary serializes");
    let mut buf = Vec::with_capacity(40 + task.len() + summary.len());
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&CHECKPOINT_VERSION.to_le_bytes());
    buf.extend_from_slice(&(task.len() as u32).to_le_bytes());
    buf.extend_from_slice(&task);
    buf.extend_from_slice(&state.watermark().to_le_bytes());
    buf.extend_from_slice(&state.records_emitted.to_le_bytes());
    buf.extend_from_slice(&(summary.len() as u32).to_le_bytes());
    buf.extend_from_slice(&summary);
    let crc = crc32fast::hash(&buf);
    buf.extend_from_slice(&crc.to_le_bytes());
    buf
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], CheckpointError> {
        let end = self.pos.checked_add(n).ok_or(CheckpointError::Corrupt)?;
        let out = self.buf.get(self.pos..end).ok_or(CheckpointError::Corrupt)?;
        self.pos = end;
        Ok(out)
    }

    fn u32(&mut self) -> Result<u32, CheckpointError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("4 bytes")))
    }

    fn u64(&mut self) -> Result<u64, CheckpointError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }
}

fn decode(buf: &[u8]) -> Result<ScanState, CheckpointError> {
    if buf.len() < 8 || &buf[..4] != MAGIC {
        return Err(CheckpointError::BadMagic);
    }
    let mut r = Reader { buf, pos: 4 };
    let version = r.u32()?;
    if version != CHECKPOINT_VERSION {
        return Err(CheckpointError::Version {
            found: version,
            expected: CHECKPOINT_VERSION,
        });
    }
    if buf.len() < 12 {
        return Err(CheckpointError::Corrupt);
    }
    let (body, tail) = buf.split_at(buf.len() - 4);
    if crc32fast::hash(body) != u32::from_le_bytes(tail.try_into().expect("4 bytes")) {
        return Err(CheckpointError::Corrupt);
    }
    let r = &mut Reader { buf: body, pos: 8 };
    let n = r.u32()? as usize;
    let task: ScanTask = serde_json::from_slice(r.take(n)?).map_err(|_| CheckpointError::Corrupt)?;
    let watermark = r.u64()?;
    let records_emitted = r.u64()?;
    let n = r.u32()? as usize;
    let summary: ScanSummary = serde_json::from_slice(r.take(n)?).map_err(|_| CheckpointError::Corrupt)?;
    if r.pos != body.len() || summary.task != task {
        return Err(CheckpointError::Corrupt);
    }
    if watermark < task.start || watermark > task.end || watermark != summary.processed_to {
        return Err(CheckpointError::Watermark {
            watermark,
            start: task.start,
            end: task.end,
        });
    }
    Ok(ScanState {
        summary,
        records_emitted,
    })
}

/// Writes the state atomically (temporary file, then rename).
pub fn checkpoint(state: &ScanState, path: &Path) -> Result<(), SearchError> {
    let tmp = path.with_extension("tmp");
    let mut f = std::fs::File::create(&tmp).map_err(io)?;
    f.write_all(&encode(state)).map_err(io)?;
    f.sync_all().map_err(io)?;
    std::fs::rename(&tmp, path).map_err(io)?;
    Ok(())
}

/// Reads a checkpoint. When `expected` is given, the stored task must match
/// it field for field (space, mode, seed, range, record threshold).
pub fn resume(path: &Path, expected: Option<&ScanTask>) -> Result<ScanState, SearchError> {
    let buf = std::fs::read(path).map_err(io)?;
    let state = decode(&buf)?;
    if let Some(t) = expected {
        let stored = state.task();
        let mismatch = if stored.seed != t.seed {
            Some(format!("seed {:?} != {:?}", stored.seed, t.seed))
        } else if stored != t {
            Some("space, mode or range differs".to_string())
        } else {
            None
        };
        if let Some(m) = mismatch {
            return Err(CheckpointError::TaskMismatch(m).into());
        }
    }
    Ok(state)
}
