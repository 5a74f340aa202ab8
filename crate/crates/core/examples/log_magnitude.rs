//! Arithmetic on numbers far outside f64 range, carried by their logs.

use kfree::{LogMagnitude, Order};

fn main() {
    let n = Order::Log2(1e6);
    let pairs = n.binomial(0, 2);
    println!("C(n, 2) for n = 2^(10^6) is {pairs}");

    let a = LogMagnitude::from_log2(3e6);
    let b = LogMagnitude::from_log2(3e6 - 1.0);
    println!("a + b = {}, a * b = {}, a / b = {}", a + b, a * b, a / b);

    let total: LogMagnitude = (0..10).map(|k| LogMagnitude::from_log2(-(k as f64))).sum();
    println!("sum of 2^-k for k < 10 = {}", total.value());

    let m = Order::Exact(100);
    println!("ln(m - 5) - ln m = {:.6} for m = 100", m.ln_minus(5) - m.ln());
}
