#include "qmk/dqft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qmk {

QImage make_qimage(int rows, int cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("image dimensions must be >= 1");
    QImage img;
    img.rows = rows;
    img.cols = cols;
    img.pix.assign(static_cast<std::size_t>(rows) * cols, Quat{0, 0, 0, 0});
    return img;
}

QImage rgb_to_qimage(const RgbImage& img) {
    QImage out = make_qimage(img.rows, img.cols);
    for (std::size_t i = 0; i < img.pix.size(); ++i) {
        const Rgb& p = img.pix[i];
        out.pix[i] = {0.0, p.r / 255.0, p.g / 255.0, p.b / 255.0};
    }
    return out;
}

namespace {

std::uint8_t to_byte(double channel) {
    const double v = std::lround(channel * 255.0);
    return static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
}

} // namespace

RgbImage qimage_to_rgb(const QImage& img) {
    RgbImage out;
    out.rows = img.rows;
    out.cols = img.cols;
    out.pix.reserve(img.pix.size());
    for (const Quat& q : img.pix) out.pix.push_back({to_byte(q.q1), to_byte(q.q2), to_byte(q.q3)});
    return out;
}

TwiddleTables make_twiddles(int M, int N, Direction dir) {
    if (M < 1 || N < 1) throw std::invalid_argument("transform dimensions must be >= 1");
    TwiddleTables tw;
    tw.M = M;
    tw.N = N;
    tw.dir = dir;
    const double sine_sign = dir == Direction::forward ? -1.0 : 1.0;

    tw.s.reserve(static_cast<std::size_t>(M) * M);
    tw.s_plan.reserve(tw.s.capacity());
    for (int m = 0; m < M; ++m) {
        for (int v = 0; v < M; ++v) {
            // Reduce the index product first so every angle lies in [0, 2*pi).
            const long long mv = (static_cast<long long>(m) * v) % M;
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(mv) / M;
            const IQuaternion<double> s{std::cos(angle), sine_sign * std::sin(angle)};
            tw.s.push_back(s);
            tw.s_plan.push_back(precompute_left(s));
        }
    }
    tw.t.reserve(static_cast<std::size_t>(N) * N);
    tw.t_plan.reserve(tw.t.capacity());
    for (int n = 0; n < N; ++n) {
        for (int u = 0; u < N; ++u) {
            const long long nu = (static_cast<long long>(n) * u) % N;
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(nu) / N;
            const JQuaternion<double> t{std::cos(angle), sine_sign * std::sin(angle)};
            tw.t.push_back(t);
            tw.t_plan.push_back(precompute_right(t));
        }
    }
    return tw;
}

namespace {

QImage transform_naive(const QImage& f, const TwiddleTables& tw, Backend backend) {
    QImage F = make_qimage(f.rows, f.cols);
    for (int v = 0; v < tw.M; ++v) {
        for (int u = 0; u < tw.N; ++u) {
            Quat acc{0, 0, 0, 0};
            for (int m = 0; m < tw.M; ++m) {
                for (int n = 0; n < tw.N; ++n) {
                    const std::size_t si = static_cast<std::size_t>(m) * tw.M + v;
                    const std::size_t ti = static_cast<std::size_t>(n) * tw.N + u;
                    Quat term;
                    if (backend == Backend::kernel) {
                        const auto plan = precompute_two_sided(tw.s_plan[si], tw.t_plan[ti]);
                        term = two_sided_mul(plan, f.at(m, n));
                    } else {
                        term = mul_direct(mul_direct(embed_i(tw.s[si]), f.at(m, n)),
                                          embed_j(tw.t[ti]));
                    }
                    acc = acc + term;
                }
            }
            F.at(v, u) = acc;
        }
    }
    return F;
}

QImage transform_rowcol(const QImage& f, const TwiddleTables& tw, Backend backend) {
    // Left pass down the columns: G(v,n) = sum_m s(m,v) * f(m,n).
    QImage G = make_qimage(f.rows, f.cols);
    for (int v = 0; v < tw.M; ++v) {
        for (int n = 0; n < tw.N; ++n) {
            Quat acc{0, 0, 0, 0};
            for (int m = 0; m < tw.M; ++m) {
                const std::size_t si = static_cast<std::size_t>(m) * tw.M + v;
                const Quat term = backend == Backend::kernel
                                      ? left_mul(tw.s_plan[si], f.at(m, n))
                                      : mul_direct(embed_i(tw.s[si]), f.at(m, n));
                acc = acc + term;
            }
            G.at(v, n) = acc;
        }
    }
    // Right pass along the rows: F(v,u) = sum_n G(v,n) * t(n,u).
    QImage F = make_qimage(f.rows, f.cols);
    for (int v = 0; v < tw.M; ++v) {
        for (int u = 0; u < tw.N; ++u) {
            Quat acc{0, 0, 0, 0};
            for (int n = 0; n < tw.N; ++n) {
                const std::size_t ti = static_cast<std::size_t>(n) * tw.N + u;
                const Quat term = backend == Backend::kernel
                                      ? right_mul(G.at(v, n), tw.t_plan[ti])
                                      : mul_direct(G.at(v, n), embed_j(tw.t[ti]));
                acc = acc + term;
            }
            F.at(v, u) = acc;
        }
    }
    return F;
}

} // namespace

QImage dqft_apply(const QImage& img, const TwiddleTables& tables, Method method,
                  Backend backend) {
    if (img.rows != tables.M || img.cols != tables.N)
        throw std::invalid_argument("image dimensions do not match twiddle tables");
    return method == Method::naive ? transform_naive(img, tables, backend)
                                   : transform_rowcol(img, tables, backend);
}

QImage dqft_forward(const QImage& img, Method method, Backend backend) {
    const TwiddleTables tables = make_twiddles(img.rows, img.cols, Direction::forward);
    return dqft_apply(img, tables, method, backend);
}

QImage dqft_inverse(const QImage& spectrum, Method method, Backend backend) {
    const TwiddleTables tables = make_twiddles(spectrum.rows, spectrum.cols, Direction::inverse);
    QImage out = dqft_apply(spectrum, tables, method, backend);
    const double scale = 1.0 / (static_cast<double>(spectrum.rows) * spectrum.cols);
    for (Quat& q : out.pix) q = q * scale;
    return out;
}

OpBudget dqft_op_budget(int M, int N, Method method) {
    if (M < 1 || N < 1) throw std::invalid_argument("transform dimensions must be >= 1");
    OpBudget b;
    b.per_baseline = {16, 12, 0};
    if (method == Method::naive) {
        b.terms = static_cast<long long>(M) * M * N * N;
        b.per_kernel = {9, 18, 0};
    } else {
        b.terms = static_cast<long long>(M) * M * N + static_cast<long long>(M) * N * N;
        b.per_kernel = {6, 6, 0};
    }
    b.scheme_total = {b.per_kernel.mul * b.terms, b.per_kernel.add * b.terms, 0};
    b.baseline_total = {b.per_baseline.mul * b.terms, b.per_baseline.add * b.terms, 0};
    return b;
}

} // namespace qmk
