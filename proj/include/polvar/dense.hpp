#pragma once

#include <complex>
#include <vector>

namespace polvar {

using cplx = std::complex<double>;

/// Small dense real matrix, row-major square storage.
struct RMat {
    int n = 0;
    std::vector<double> a;

    RMat() = default;
    explicit RMat(int size) : n(size), a(static_cast<size_t>(size) * size, 0.0) {}

    double operator()(int r, int c) const { return a[static_cast<size_t>(r) * n + c]; }
    double& operator()(int r, int c) { return a[static_cast<size_t>(r) * n + c]; }

    static RMat identity(int size) {
        RMat e(size);
        for (int i = 0; i < size; ++i) e(i, i) = 1.0;
        return e;
    }
};

/// Small dense complex matrix, row-major square storage.
struct CMat {
    int n = 0;
    std::vector<cplx> a;

    CMat() = default;
    explicit CMat(int size) : n(size), a(static_cast<size_t>(size) * size) {}

    cplx operator()(int r, int c) const { return a[static_cast<size_t>(r) * n + c]; }
    cplx& operator()(int r, int c) { return a[static_cast<size_t>(r) * n + c]; }

    std::vector<cplx> apply(const std::vector<cplx>& v) const {
        std::vector<cplx> out(static_cast<size_t>(n));
        for (int r = 0; r < n; ++r) {
            cplx s = 0.0;
            for (int c = 0; c < n; ++c) s += (*this)(r, c) * v[static_cast<size_t>(c)];
            out[static_cast<size_t>(r)] = s;
        }
        return out;
    }
};

inline CMat operator*(const CMat& x, const CMat& y) {
    CMat r(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < x.n; ++k) s += x(i, k) * y(k, j);
            r(i, j) = s;
        }
    return r;
}

} // namespace polvar
