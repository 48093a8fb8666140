//! Assigns every standard Young tableau of size n to a scale and recovers the
//! dimensions C(n,k)·d_k of the wavelet spaces.

use mra_rank::validation::syt::{enumerate_syt, hook_length_dim, syt_dimension_audit};

fn main() -> mra_rank::Result<()> {
    for q in enumerate_syt(4)? {
        let (l, m) = q.hook_runs();
        println!("{:?}  l={l} m={m} eig={} scale={} dim={}", q.rows, q.eig(), q.scale(), hook_length_dim(&q.shape()));
    }
    print!("{}", syt_dimension_audit(6)?);
    Ok(())
}
