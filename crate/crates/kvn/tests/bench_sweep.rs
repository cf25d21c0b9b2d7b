use kvn::fft::{transform_axis, Direction};
use num_complex::Complex64;
use std::time::Instant;

#[test]
#[ignore]
fn bench_axes() {
    let shape = [64usize, 64, 64];
    let total: usize = shape.iter().product();
    let mut buf: Vec<Complex64> = (0..total)
        .map(|i| Complex64::new((i as f64 * 0.1).sin(), 0.3))
        .collect();

    // raw memory pass
    let t0 = Instant::now();
    let n = 100;
    for _ in 0..n {
        for z in buf.iter_mut() {
            *z *= Complex64::new(0.999999, 1e-7);
        }
    }
    println!("pointwise complex mul pass: {:.3} ms", t0.elapsed().as_secs_f64() / n as f64 * 1e3);

    for axis in 0..3 {
        let t0 = Instant::now();
        for _ in 0..n {
            transform_axis(&mut buf, &shape, axis, Direction::Forward);
        }
        println!("axis {axis} sweep: {:.3} ms", t0.elapsed().as_secs_f64() / n as f64 * 1e3);
    }

    // raw fft throughput on contiguous 64-point lanes
    let fft = kvn::fft::plan(64, Direction::Forward);
    let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
    let t0 = Instant::now();
    for _ in 0..n {
        for lane in buf.chunks_exact_mut(64) {
            fft.process_with_scratch(lane, &mut scratch);
        }
    }
    println!("bare contiguous 64-pt ffts over array: {:.3} ms", t0.elapsed().as_secs_f64() / n as f64 * 1e3);
}
