// Port of the reference catch22 C implementation. Loop bounds, integer
// truncations and tie handling follow the reference so that outputs agree
// to floating point noise.
#include "pdm/catch22.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <vector>

namespace pdm::catch22 {
namespace {

using Vec = std::vector<double>;
using cplx = std::complex<double>;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// The reference hardcodes this truncated constant for the spectral features.
constexpr double kRefPi = 3.14159265359;

double mean(const double* a, int n) {
    double m = 0.0;
    for (int i = 0; i < n; ++i) m += a[i];
    return m / n;
}

double stddev(const double* a, int n) {
    const double m = mean(a, n);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += (a[i] - m) * (a[i] - m);
    return std::sqrt(s / (n - 1));
}

double median(Vec b) {
    std::sort(b.begin(), b.end());
    const auto n = b.size();
    return n % 2 == 1 ? b[n / 2] : (b[n / 2] + b[n / 2 - 1]) / 2.0;
}

double quantile(Vec tmp, double quant) {
    std::sort(tmp.begin(), tmp.end());
    const int size = static_cast<int>(tmp.size());
    const double q = 0.5 / size;
    if (quant < q) return tmp.front();
    if (quant > 1 - q) return tmp.back();
    const double idx = size * quant - 0.5;
    const int lo = static_cast<int>(std::floor(idx));
    const int hi = static_cast<int>(std::ceil(idx));
    if (lo == hi) return tmp[lo];
    return tmp[lo] + (idx - lo) * (tmp[hi] - tmp[lo]) / (hi - lo);
}

int nextpow2(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}

// In-place radix-2 forward DFT; size must be a power of two.
void fft(std::vector<cplx>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * M_PI / static_cast<double>(len);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx w = std::polar(1.0, ang * static_cast<double>(k));
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

Vec autocorrs(const double* y, int size) {
    const double m = mean(y, size);
    const int nfft = nextpow2(size) << 1;
    std::vector<cplx> f(nfft, cplx(0.0, 0.0));
    for (int i = 0; i < size; ++i) f[i] = cplx(y[i] - m, 0.0);
    fft(f);
    for (auto& v : f) v *= std::conj(v);
    fft(f);
    const cplx d = f[0];
    Vec out(nfft);
    for (int i = 0; i < nfft; ++i) out[i] = (f[i] / d).real();
    return out;
}

int firstzero(const double* y, int size, int maxtau) {
    const Vec ac = autocorrs(y, size);
    int i = 0;
    while (ac[i] > 0 && i < maxtau) ++i;
    return i;
}

struct Hist {
    std::vector<int> counts;
    Vec edges;
};

Hist histcounts(const double* y, int size, int nbins) {
    double lo = std::numeric_limits<double>::max();
    double hi = -lo;
    for (int i = 0; i < size; ++i) {
        lo = std::min(lo, y[i]);
        hi = std::max(hi, y[i]);
    }
    const double step = (hi - lo) / nbins;
    Hist h{std::vector<int>(nbins, 0), Vec(nbins + 1)};
    for (int i = 0; i < size; ++i) {
        int b = static_cast<int>((y[i] - lo) / step);
        if (b < 0) b = 0;
        if (b >= nbins) b = nbins - 1;
        ++h.counts[b];
    }
    for (int i = 0; i <= nbins; ++i) h.edges[i] = i * step + lo;
    return h;
}

// Labels 1..groups by quantile bands.
std::vector<int> coarsegrain(const double* y, int size, int groups) {
    Vec v(y, y + size);
    Vec th(groups + 1);
    const double stepsize = 1.0 / groups;
    double ls = 0.0;
    for (int i = 0; i <= groups; ++i) {
        th[i] = quantile(v, ls);
        ls += stepsize;
    }
    th[0] -= 1;
    std::vector<int> labels(size, 0);
    for (int i = 0; i < groups; ++i)
        for (int j = 0; j < size; ++j)
            if (y[j] > th[i] && y[j] <= th[i + 1]) labels[j] = i + 1;
    return labels;
}

double histogram_mode(const double* y, int size, int nbins) {
    const Hist h = histcounts(y, size, nbins);
    double max_count = 0, out = 0;
    int num_maxs = 1;
    for (int i = 0; i < nbins; ++i) {
        const double centre = (h.edges[i] + h.edges[i + 1]) * 0.5;
        if (h.counts[i] > max_count) {
            max_count = h.counts[i];
            num_maxs = 1;
            out = centre;
        } else if (h.counts[i] == max_count) {
            ++num_maxs;
            out += centre;
        }
    }
    return out / num_maxs;
}

double f1ecac(const double* y, int size) {
    const Vec ac = autocorrs(y, size);
    const double thresh = 1.0 / std::exp(1.0);
    for (int i = 0; i < size - 2; ++i) {
        if (ac[i + 1] < thresh) {
            const double m = ac[i + 1] - ac[i];
            return i + (thresh - ac[i]) / m;
        }
    }
    return size;
}

double first_min_ac(const double* y, int size) {
    const Vec ac = autocorrs(y, size);
    for (int i = 1; i < size - 1; ++i)
        if (ac[i] < ac[i - 1] && ac[i] < ac[i + 1]) return i;
    return size;
}

double histogram_ami_even_2_5(const double* y, int size) {
    constexpr int tau = 2, nb = 5;
    const double hi = *std::max_element(y, y + size);
    const double lo = *std::min_element(y, y + size);
    const double step = (hi - lo + 0.2) / nb;
    double edges[nb + 1];
    for (int i = 0; i <= nb; ++i) edges[i] = lo + step * i - 0.1;
    auto assign = [&](double v) {
        for (int j = 0; j <= nb; ++j)
            if (v < edges[j]) return j;
        return 0;
    };
    int joint[(nb + 1) * (nb + 1)] = {};
    for (int i = 0; i < size - tau; ++i) {
        const double b12 = (assign(y[i]) - 1) * (nb + 1) + assign(y[i + tau]);
        for (int j = 0; j < (nb + 1) * (nb + 1); ++j) {
            if (b12 <= j + 1) {
                ++joint[j];
                break;
            }
        }
    }
    double pij[nb][nb];
    int total = 0;
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j) {
            pij[j][i] = joint[i * (nb + 1) + j];
            total += joint[i * (nb + 1) + j];
        }
    double pi[nb] = {}, pj[nb] = {};
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j) {
            pij[i][j] /= total;
        }
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j) {
            pi[i] += pij[i][j];
            pj[j] += pij[i][j];
        }
    double ami = 0;
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j)
            if (pij[i][j] > 0) ami += pij[i][j] * std::log(pij[i][j] / (pj[j] * pi[i]));
    return ami;
}

double trev_1_num(const double* y, int size) {
    double s = 0;
    for (int i = 0; i < size - 1; ++i) s += std::pow(y[i + 1] - y[i], 3);
    return s / (size - 1);
}

double hrv_pnn40(const double* y, int size) {
    double c = 0;
    for (int i = 0; i < size - 1; ++i)
        if (std::fabs(y[i + 1] - y[i]) * 1000 > 40) c += 1;
    return c / (size - 1);
}

double mean_longstretch1(const double* y, int size) {
    const double m = mean(y, size);
    int best = 0, last = 0;
    for (int i = 0; i < size - 1; ++i) {
        const int bin = (y[i] - m <= 0) ? 0 : 1;
        if (bin == 0 || i == size - 2) {
            best = std::max(best, i - last);
            last = i;
        }
    }
    return best;
}

double diff_longstretch0(const double* y, int size) {
    int best = 0, last = 0;
    for (int i = 0; i < size - 1; ++i) {
        const int bin = (y[i + 1] - y[i] < 0) ? 0 : 1;
        if (bin == 1 || i == size - 2) {
            best = std::max(best, i - last);
            last = i;
        }
    }
    return best;
}

double transition_matrix_sumdiagcov(const double* y, int size) {
    if (std::all_of(y, y + size, [&](double v) { return v == y[0]; })) return kNaN;
    const int tau = firstzero(y, size, size);
    const int ndown = (size - 1) / tau + 1;
    Vec down(ndown);
    for (int i = 0; i < ndown; ++i) down[i] = y[i * tau];
    const auto cg = coarsegrain(down.data(), ndown, 3);
    double t[3][3] = {};
    for (int j = 0; j < ndown - 1; ++j) t[cg[j] - 1][cg[j + 1] - 1] += 1;
    for (auto& row : t)
        for (double& v : row) v /= (ndown - 1);
    double total = 0;
    for (int c = 0; c < 3; ++c) {
        const double col[3] = {t[0][c], t[1][c], t[2][c]};
        const double m = mean(col, 3);
        double cv = 0;
        for (double v : col) cv += (v - m) * (v - m);
        total += cv / 2;
    }
    return total;
}

// Least squares fit of a cubic spline with breaks {0, floor(n/2)-1, n-1},
// evaluated on the sample grid. Same function space as the reference
// B-spline fit, solved by orthogonal projection.
Vec splinefit(const double* y, int size) {
    const double mid = std::floor(size / 2.0) - 1;
    const double scale = size > 1 ? size - 1.0 : 1.0;
    const double tb = mid / scale;
    constexpr int kBasis = 5;
    std::vector<Vec> q(kBasis, Vec(size));
    for (int i = 0; i < size; ++i) {
        const double t = i / scale;
        const double r = std::max(0.0, t - tb);
        q[0][i] = 1.0;
        q[1][i] = t;
        q[2][i] = t * t;
        q[3][i] = t * t * t;
        q[4][i] = r * r * r;
    }
    Vec fit(size, 0.0);
    std::vector<Vec> ortho;
    for (auto& v : q) {
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& u : ortho) {
                double d = 0;
                for (int i = 0; i < size; ++i) d += u[i] * v[i];
                for (int i = 0; i < size; ++i) v[i] -= d * u[i];
            }
        double nrm = 0;
        for (double x : v) nrm += x * x;
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12) continue;
        for (double& x : v) x /= nrm;
        ortho.push_back(v);
    }
    for (const auto& u : ortho) {
        double d = 0;
        for (int i = 0; i < size; ++i) d += u[i] * y[i];
        for (int i = 0; i < size; ++i) fit[i] += d * u[i];
    }
    return fit;
}

double periodicity_wang(const double* y, int size) {
    constexpr double th = 0.01;
    const Vec spline = splinefit(y, size);
    Vec sub(size);
    for (int i = 0; i < size; ++i) sub[i] = y[i] - spline[i];
    const int acmax = static_cast<int>(std::ceil(size / 3.0));
    Vec acf(acmax);
    for (int tau = 1; tau <= acmax; ++tau) {
        double s = 0;
        for (int i = 0; i < size - tau; ++i) s += sub[i] * sub[i + tau];
        acf[tau - 1] = s / (size - tau);
    }
    std::vector<int> troughs;
    for (int i = 1; i < acmax - 1; ++i) {
        const double in = acf[i] - acf[i - 1];
        const double out = acf[i + 1] - acf[i];
        if (in < 0 && out > 0) {
            troughs.push_back(i);
        } else if (in > 0 && out < 0) {
            int trough = -1;
            for (int t : troughs)
                if (t < i) trough = t;
            if (trough < 0) continue;
            if (acf[i] - acf[trough] < th) continue;
            if (acf[i] < 0) continue;
            return i;
        }
    }
    return 0;
}

double embed2_dist_expfit(const double* y, int size) {
    int tau = firstzero(y, size, size);
    if (tau > size / 10.0) tau = static_cast<int>(std::floor(size / 10.0));
    const int nd = size - tau - 1;
    Vec d(nd);
    for (int i = 0; i < nd; ++i) {
        const double a = y[i + 1] - y[i];
        const double b = y[i + tau] - y[i + tau + 1];
        d[i] = std::sqrt(a * a + b * b);
    }
    const double l = mean(d.data(), nd);
    const double sd = stddev(d.data(), nd);
    if (sd < 0.001) return 0;
    const double lo = *std::min_element(d.begin(), d.end());
    const double hi = *std::max_element(d.begin(), d.end());
    const int nbins = static_cast<int>(std::ceil((hi - lo) / (3.5 * sd / std::pow(nd, 1 / 3.))));
    if (nbins == 0) return 0;
    const Hist h = histcounts(d.data(), nd, nbins);
    double s = 0;
    for (int i = 0; i < nbins; ++i) {
        const double norm = static_cast<double>(h.counts[i]) / nd;
        double e = std::exp(-(h.edges[i] + h.edges[i + 1]) * 0.5 / l) / l;
        if (e < 0) e = 0;
        s += std::fabs(norm - e);
    }
    return s / nbins;
}

double autocorr_lag(const double* x, int size, int lag) {
    const int n = size - lag;
    const double* yv = x + lag;
    const double mx = mean(x, n), my = mean(yv, n);
    double nom = 0, dx = 0, dy = 0;
    for (int i = 0; i < n; ++i) {
        nom += (x[i] - mx) * (yv[i] - my);
        dx += (x[i] - mx) * (x[i] - mx);
        dy += (yv[i] - my) * (yv[i] - my);
    }
    return nom / std::sqrt(dx * dy);
}

double ami_gaussian_fmmi(const double* y, int size) {
    int tau = std::min(40, (size + 1) / 2);
    if (tau < 3) return tau;
    auto ami = [&](int lag) {
        const double ac = autocorr_lag(y, size, lag);
        return -0.5 * std::log(1.0 - ac * ac);
    };
    double prev = ami(1), curr = ami(2);
    for (int i = 1; i < tau - 1; ++i) {
        const double next = ami(i + 2);
        if (curr < prev && curr < next) return i;
        prev = curr;
        curr = next;
    }
    return tau;
}

double mean1_tauresrat(const double* y, int size) {
    const int n = size - 1;
    Vec res(n);
    for (int i = 0; i < n; ++i) res[i] = y[i + 1] - y[i];
    const double r = firstzero(res.data(), n, n);
    const double z = firstzero(y, size, size);
    return r / z;
}

double mean3_stderr(const double* y, int size) {
    const int n = size - 3;
    Vec res(n);
    for (int i = 0; i < n; ++i) res[i] = y[i + 3] - (y[i] + y[i + 1] + y[i + 2]) / 3.0;
    return stddev(res.data(), n);
}

double outlier_include(const double* y, int size, double sign) {
    constexpr double inc = 0.01;
    Vec work(size);
    int tot = 0;
    bool constant = true;
    for (int i = 0; i < size; ++i) {
        if (y[i] != y[0]) constant = false;
        work[i] = sign * y[i];
        if (work[i] >= 0) ++tot;
    }
    if (constant) return 0;
    const double maxv = *std::max_element(work.begin(), work.end());
    if (maxv < inc) return 0;
    const int nthresh = static_cast<int>(maxv / inc + 1);

    // Positions in descending value order; threshold j admits a prefix.
    std::vector<int> order(size);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return work[a] > work[b]; });
    std::vector<int> counts(nthresh);
    {
        int c = 0;
        for (int j = nthresh - 1; j >= 0; --j) {
            const double thr = j * inc;
            while (c < size && work[order[c]] >= thr) ++c;
            counts[j] = c;
        }
    }
    int mj = 0, fbi = nthresh - 1;
    for (int j = 0; j < nthresh; ++j)
        if ((counts[j] - 1) * 100.0 / tot > 2) mj = j;
    for (int j = nthresh - 1; j >= 0; --j)
        if (counts[j] - 1 == 0) fbi = j;
    const int trim = std::min(mj, fbi);

    // Fenwick tree over 1-based positions for running medians.
    std::vector<int> bit(size + 1, 0);
    int logn = 1;
    while ((logn << 1) <= size) logn <<= 1;
    auto add = [&](int i) {
        for (; i <= size; i += i & -i) ++bit[i];
    };
    auto select = [&](int k) {
        int pos = 0;
        for (int pw = logn; pw > 0; pw >>= 1)
            if (pos + pw <= size && bit[pos + pw] < k) {
                pos += pw;
                k -= bit[pos];
            }
        return pos + 1;
    };
    Vec ms(trim + 1);
    const double denom = size / 2.0;
    int inserted = 0;
    for (int j = nthresh - 1; j >= 0; --j) {
        while (inserted < counts[j]) add(order[inserted++] + 1);
        if (j > trim) continue;
        const int m = inserted;
        double med;
        if (m % 2 == 1) {
            med = select(m / 2 + 1);
        } else {
            med = (static_cast<double>(select(m / 2)) + select(m / 2 + 1)) / 2.0;
        }
        ms[j] = med / denom - 1;
    }
    return median(ms);
}

struct Welch {
    Vec w, sw;
};

Welch welch_rect(const double* y, int size) {
    const int nfft = nextpow2(size);
    const double df = 1.0 / nextpow2(size);
    const double m = mean(y, size);
    const double kmu = static_cast<double>(size);
    std::vector<cplx> f(nfft, cplx(0.0, 0.0));
    for (int i = 0; i < size; ++i) f[i] = cplx(y[i] - m, 0.0);
    fft(f);
    const int nout = nfft / 2 + 1;
    Welch out{Vec(nout), Vec(nout)};
    for (int i = 0; i < nout; ++i) {
        double p = std::pow(std::abs(f[i]), 2) / kmu;
        if (i > 0 && i < nout - 1) p *= 2;
        out.w[i] = 2 * kRefPi * (i * df);
        out.sw[i] = p / (2 * kRefPi);
    }
    return out;
}

double welch_area_5_1(const double* y, int size) {
    const Welch s = welch_rect(y, size);
    const int n = static_cast<int>(s.w.size());
    for (double v : s.sw)
        if (std::isinf(v)) return 0;
    const double dw = s.w[1] - s.w[0];
    double a = 0;
    for (int i = 0; i < n / 5; ++i) a += s.sw[i];
    return a * dw;
}

double welch_centroid(const double* y, int size) {
    const Welch s = welch_rect(y, size);
    for (double v : s.sw)
        if (std::isinf(v)) return 0;
    Vec cs(s.sw.size());
    std::partial_sum(s.sw.begin(), s.sw.end(), cs.begin());
    const double half = cs.back() * 0.5;
    for (std::size_t i = 0; i < cs.size(); ++i)
        if (cs[i] > half) return s.w[i];
    return 0;
}

double motif_three_hh(const double* y, int size) {
    const auto yt = coarsegrain(y, size, 3);
    double hh = 0;
    for (int a = 1; a <= 3; ++a) {
        std::vector<int> r1;
        for (int j = 0; j < size; ++j)
            if (yt[j] == a) r1.push_back(j);
        if (!r1.empty() && r1.back() == size - 1) r1.pop_back();
        for (int b = 1; b <= 3; ++b) {
            int c = 0;
            for (int j : r1)
                if (yt[j + 1] == b) ++c;
            const double p = c / (size - 1.0);
            if (p > 0) hh -= p * std::log(p);
        }
    }
    return hh;
}

void linreg(int n, const double* x, const double* y, double& m, double& b) {
    double sx = 0, sx2 = 0, sxy = 0, sy = 0;
    for (int i = 0; i < n; ++i) {
        sx += x[i];
        sx2 += x[i] * x[i];
        sxy += x[i] * y[i];
        sy += y[i];
    }
    const double denom = n * sx2 - sx * sx;
    if (denom == 0) {
        m = b = 0;
        return;
    }
    m = (n * sxy - sx * sy) / denom;
    b = (sy * sx2 - sx * sxy) / denom;
}

double fluct_anal(const double* y, int size, int lag, bool dfa) {
    const double lin_low = std::log(5);
    const double lin_high = std::log(size / 2);
    constexpr int steps = 50;
    const double step = (lin_high - lin_low) / (steps - 1);
    int tau[steps];
    for (int i = 0; i < steps; ++i) tau[i] = static_cast<int>(std::round(std::exp(lin_low + i * step)));
    int ntau = steps;
    for (int i = 0; i < steps - 1; ++i) {
        while (tau[i] == tau[i + 1] && i < ntau - 1) {
            for (int j = i + 1; j < steps - 1; ++j) tau[j] = tau[j + 1];
            ntau -= 1;
        }
    }
    if (ntau < 12) return 0;

    const int size_cs = size / lag;
    Vec ycs(size_cs);
    ycs[0] = y[0];
    for (int i = 0; i < size_cs - 1; ++i) ycs[i + 1] = ycs[i] + y[(i + 1) * lag];

    Vec logtt(ntau), logff(ntau);
    for (int i = 0; i < ntau; ++i) {
        const int t = tau[i];
        const int nbuf = size_cs / t;
        double sx = 0, sx2 = 0;
        for (int k = 0; k < t; ++k) {
            sx += k + 1.0;
            sx2 += (k + 1.0) * (k + 1.0);
        }
        const double denom = t * sx2 - sx * sx;
        double fi = 0;
        for (int j = 0; j < nbuf; ++j) {
            const double* w = ycs.data() + static_cast<std::size_t>(j) * t;
            double sxy = 0, sy = 0;
            for (int k = 0; k < t; ++k) {
                sxy += (k + 1.0) * w[k];
                sy += w[k];
            }
            double m = 0, b = 0;
            if (denom != 0) {
                m = (t * sxy - sx * sy) / denom;
                b = (sy * sx2 - sx * sxy) / denom;
            }
            if (dfa) {
                for (int k = 0; k < t; ++k) {
                    const double r = w[k] - (m * (k + 1) + b);
                    fi += r * r;
                }
            } else {
                double mx = w[0] - (m + b), mn = mx;
                for (int k = 1; k < t; ++k) {
                    const double r = w[k] - (m * (k + 1) + b);
                    mx = std::max(mx, r);
                    mn = std::min(mn, r);
                }
                fi += (mx - mn) * (mx - mn);
            }
        }
        const double fv = dfa ? std::sqrt(fi / (nbuf * t)) : std::sqrt(fi / nbuf);
        logtt[i] = std::log(t);
        logff[i] = std::log(fv);
    }

    constexpr int min_points = 6;
    const int ntt = ntau;
    const int nsserr = ntt - 2 * min_points + 1;
    Vec sserr(nsserr);
    Vec buf(ntt);
    for (int i = min_points; i < ntt - min_points + 1; ++i) {
        double m1, b1, m2, b2;
        linreg(i, logtt.data(), logff.data(), m1, b1);
        linreg(ntt - i + 1, logtt.data() + i - 1, logff.data() + i - 1, m2, b2);
        double e1 = 0, e2 = 0;
        for (int j = 0; j < i; ++j) {
            const double r = logtt[j] * m1 + b1 - logff[j];
            e1 += r * r;
        }
        for (int j = 0; j < ntt - i + 1; ++j) {
            const double r = logtt[j + i - 1] * m2 + b2 - logff[j + i - 1];
            e2 += r * r;
        }
        sserr[i - min_points] = std::sqrt(e1) + std::sqrt(e2);
    }
    const double mn = *std::min_element(sserr.begin(), sserr.end());
    double first = 0;
    for (int i = 0; i < nsserr; ++i)
        if (sserr[i] == mn) {
            first = i + min_points - 1;
            break;
        }
    return (first + 1) / ntt;
}

}  // namespace

std::array<double, kCount> compute_raw(std::span<const double> in) {
    const int n = static_cast<int>(in.size());
    std::array<double, kCount> out{};
    out[22] = mean(in.data(), n);
    out[23] = n > 1 ? stddev(in.data(), n) : 0.0;

    Vec z(in.begin(), in.end());
    {
        const double m = out[22];
        const double sd = out[23];
        for (double& v : z) v = (v - m) / sd;
    }
    if (std::any_of(z.begin(), z.end(), [](double v) { return std::isnan(v); })) {
        // Reference guards: a few features report 0 for NaN input, the rest NaN.
        for (int i = 0; i < 22; ++i) out[i] = kNaN;
        out[2] = out[3] = out[9] = 0;
        return out;
    }
    const double* y = z.data();
    out[0] = histogram_mode(y, n, 5);
    out[1] = histogram_mode(y, n, 10);
    out[2] = f1ecac(y, n);
    out[3] = first_min_ac(y, n);
    out[4] = histogram_ami_even_2_5(y, n);
    out[5] = trev_1_num(y, n);
    out[6] = hrv_pnn40(y, n);
    out[7] = mean_longstretch1(y, n);
    out[8] = transition_matrix_sumdiagcov(y, n);
    out[9] = periodicity_wang(y, n);
    out[10] = embed2_dist_expfit(y, n);
    out[11] = ami_gaussian_fmmi(y, n);
    out[12] = mean1_tauresrat(y, n);
    out[13] = outlier_include(y, n, 1.0);
    out[14] = outlier_include(y, n, -1.0);
    out[15] = welch_area_5_1(y, n);
    out[16] = diff_longstretch0(y, n);
    out[17] = motif_three_hh(y, n);
    out[18] = fluct_anal(y, n, 1, false);
    out[19] = fluct_anal(y, n, 2, true);
    out[20] = welch_centroid(y, n);
    out[21] = mean3_stderr(y, n);
    return out;
}

std::array<double, kCount> compute(std::span<const double> y) {
    std::array<double, kCount> out{};
    const int n = static_cast<int>(y.size());
    if (n == 0) return out;
    const bool constant = std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; });
    if (n >= kMinLength && !constant) {
        out = compute_raw(y);
    } else {
        double m = 0;
        for (double v : y) m += v;
        out[22] = m / n;
        out[23] = n > 1 ? stddev(y.data(), n) : 0.0;
    }
    for (double& v : out)
        if (!std::isfinite(v)) v = 0.0;
    return out;
}

}  // namespace pdm::catch22
