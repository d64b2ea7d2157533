//! Interrupts a census slice after its first work unit, writes a checkpoint,
//! resumes from the file and compares with an uninterrupted run.
//!
//! ```text
//! cargo run --release --example checkpoint_resume
//! ```

use linefree::search::{advance, checkpoint, resume, run, RunOptions, ScanState, ScanTask, Space};

fn main() {
    let path = std::env::temp_dir().join(format!("linefree-example-{}.ckpt", std::process::id()));
    let task = ScanTask::exhaustive(Space::PLANE_QUARTICS_F4, 200_000_000, 204_000_000).unwrap();

    let mut state = ScanState::new(&task).unwrap();
    let first = RunOptions {
        batch_units: 1,
        stop_at: Some(task.start + 1),
        ..RunOptions::default()
    };
    advance(&mut state, &first, |s, _| checkpoint(s, &path)).unwrap();
    println!("stopped at {} of [{}, {})", state.watermark(), task.start, task.end);

    let mut resumed = resume(&path, Some(&task)).unwrap();
    advance(&mut resumed, &RunOptions::default(), |_, _| Ok(())).unwrap();
    let straight = run(&task, &RunOptions::default()).unwrap();
    println!(
        "resumed to {}, {} records",
        resumed.watermark(),
        resumed.records_emitted
    );
    println!("matches uninterrupted run: {}", resumed.summary == straight.summary);
    std::fs::remove_file(&path).ok();
}
