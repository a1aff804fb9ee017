"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--batch 64] [--repeat 20]

Reports the best-of-``repeat`` time per call for each kernel at LeNet-5
shapes, then a full LeNet-5 forward/backward pass under each backend.
"""

import argparse
import timeit

import numpy as np

from feddip import _kernels_py, kernels, nn

try:
    from feddip import _kernels as compiled
except ImportError:
    compiled = None


def kernel_cases(batch: int, rng):
    # first conv (1->6, 5x5, padding 2 on 28x28) and first pool (6x28x28, k=2)
    x = rng.normal(size=(batch, 1, 32, 32))
    cols = rng.normal(size=(batch, 1, 5, 5, 28, 28))
    a = rng.normal(size=(batch, 6, 28, 28))
    dout = rng.normal(size=(batch, 6, 14, 14))
    _, arg = _kernels_py.maxpool_forward(a, 2)
    return {
        "im2col": lambda m: m.im2col(x, 5, 5, 1, 28, 28),
        "col2im": lambda m: m.col2im(cols, 32, 32, 1),
        "maxpool_forward": lambda m: m.maxpool_forward(a, 2),
        "maxpool_backward": lambda m: m.maxpool_backward(dout, arg, 28, 28, 2),
    }


def best(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def lenet_pass(batch: int, rng):
    arch = nn.lenet5()
    p = nn.init_params(arch, 0)
    b = nn.Batch(rng.random((batch, 784)), rng.integers(0, 10, batch))
    return lambda: nn.loss_and_grad(arch, p, b)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--batch", type=int, default=64)
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(0)
    backends = [("python", _kernels_py)] + ([("cython", compiled)] if compiled else [])
    if compiled is None:
        print("compiled extension not built; timing the numpy fallback only")

    print(f"{'kernel':<18}" + "".join(f"{name:>12}" for name, _ in backends) + "    speedup")
    for label, fn in kernel_cases(args.batch, rng).items():
        times = [best(lambda: fn(mod), args.repeat) for _, mod in backends]
        row = f"{label:<18}" + "".join(f"{t * 1e3:>10.3f}ms" for t in times)
        if len(times) == 2:
            row += f"    {times[0] / times[1]:6.2f}x"
        print(row)

    step = lenet_pass(args.batch, rng)
    saved = kernels._impl
    times = []
    try:
        for _, mod in backends:
            kernels._impl = mod
            times.append(best(step, max(3, args.repeat // 4)))
    finally:
        kernels._impl = saved
    row = f"{'lenet5 fwd+bwd':<18}" + "".join(f"{t * 1e3:>10.3f}ms" for t in times)
    if len(times) == 2:
        row += f"    {times[0] / times[1]:6.2f}x"
    print(row)


if __name__ == "__main__":
    main()
