#pragma once

#include <cstdint>
#include <vector>

#include "qmk/counting.hpp"
#include "qmk/kernels.hpp"
#include "qmk/quaternion.hpp"

namespace qmk {

using Quat = Quaternion<double>;

// M x N grid of quaternion-valued pixels, row major.
struct QImage {
    int rows = 0;
    int cols = 0;
    std::vector<Quat> pix;

    Quat& at(int m, int n) { return pix[static_cast<std::size_t>(m) * cols + n]; }
    const Quat& at(int m, int n) const { return pix[static_cast<std::size_t>(m) * cols + n]; }
};

QImage make_qimage(int rows, int cols);

struct Rgb {
    std::uint8_t r, g, b;
};

struct RgbImage {
    int rows = 0;
    int cols = 0;
    std::vector<Rgb> pix;
};

// Pure-quaternion pixel embedding: (r,g,b) -> (0, r/255, g/255, b/255).
QImage rgb_to_qimage(const RgbImage& img);
// Inverse embedding with clamp-and-round back to bytes; q0 is dropped.
RgbImage qimage_to_rgb(const QImage& img);

enum class Direction { forward, inverse };
enum class Method { naive, rowcol };
// kernel = the factorized schemes; oracle = mul_direct composition. The two
// are algebraically identical, so swapping backends perturbs a spectrum only
// at rounding level.
enum class Backend { kernel, oracle };

// Exponential constant tables with their precomputed plans. The left table
// holds i-quaternions s(m,v) = (cos(2*pi*m*v/M), -sin(2*pi*m*v/M)), the
// right table j-quaternions of the same angle over N; the inverse direction
// flips the sine sign.
struct TwiddleTables {
    int M = 0;
    int N = 0;
    Direction dir = Direction::forward;
    std::vector<IQuaternion<double>> s;   // M x M, index m*M + v
    std::vector<LeftPlan<double>> s_plan; // matching plans
    std::vector<JQuaternion<double>> t;   // N x N, index n*N + u
    std::vector<RightPlan<double>> t_plan;
};

TwiddleTables make_twiddles(int M, int N, Direction dir);

// Two-sided transform F(v,u) = sum_m sum_n s(m,v) * f(m,n) * t(n,u).
// naive evaluates the double sum term by term (one sqt kernel each);
// rowcol applies the left kernel down the columns, then the right kernel
// along the rows. Accumulation order is fixed (ascending m, then n).
QImage dqft_forward(const QImage& img, Method method, Backend backend = Backend::kernel);

// Inverse: conjugated exponentials and 1/(M*N) scaling; exact inverse of
// dqft_forward up to rounding.
QImage dqft_inverse(const QImage& spectrum, Method method, Backend backend = Backend::kernel);

// Shared worker when the caller already owns tables.
QImage dqft_apply(const QImage& img, const TwiddleTables& tables, Method method,
                  Backend backend);

// Analytic per-transform arithmetic budget: how many kernel invocations the
// method performs and what they cost, next to the same count routed through
// the 16-multiplication baseline.
struct OpBudget {
    long long terms = 0;      // kernel invocations
    OpTally per_kernel;       // factorized scheme, one invocation
    OpTally per_baseline;     // direct scheme, one invocation
    OpTally scheme_total;     // terms * per_kernel
    OpTally baseline_total;   // terms * per_baseline
};

OpBudget dqft_op_budget(int M, int N, Method method);

} // namespace qmk
