#include "wdvv/prepotential.hpp"

#include <algorithm>

#include "wdvv/bellpoly.hpp"

namespace wdvv {

namespace {

constexpr cplx ipi{0.0, pi};

struct PoleData {
    int N = 1;
    cplx X;                 // x_{N}(j)
    std::vector<cplx> x;    // x_1(j).. x_{2N}(j), extended
    BellTable B;
    PoleData(const HurwitzPoint& p, int j)
        : N(p.n(j) + 1), X(p.x(j, p.n(j) + 1)), x(p.coefficients(j, 2 * (p.n(j) + 1))), B(x, p.n(j) + 1)
    {
    }
    cplx xa(int a) const { return x[a - 1]; }
};

// K^{(r)}(v) for r = 0..rmax; r = 0 through the log cursor.
std::vector<cplx> k_table(cplx v, const Modulus& md, int rmax, LogCursor& lg)
{
    std::vector<cplx> d(rmax + 1);
    d[0] = lg.K(v, md);
    if (rmax >= 1) d[1] = wzeta(v, md);
    if (rmax >= 2) {
        std::vector<cplx> w(rmax - 1);
        wp_derivs(v, md, rmax - 2, w.data());
        for (int r = 2; r <= rmax; ++r) d[r] = -w[r - 2];
    }
    return d;
}

std::vector<cplx> k_table_nolog(cplx v, const Modulus& md, int rmax)
{
    std::vector<cplx> d(rmax + 1, 0.0);
    if (rmax >= 1) d[1] = wzeta(v, md);
    if (rmax >= 2) {
        std::vector<cplx> w(rmax - 1);
        wp_derivs(v, md, rmax - 2, w.data());
        for (int r = 2; r <= rmax; ++r) d[r] = -w[r - 2];
    }
    return d;
}

// L_{alpha}[K^{(shift)}] = sum_{l=1}^{alpha} B_{alpha,l}/l! K^{(shift+l)}
cplx bell_L(const PoleData& P, int alpha, const std::vector<cplx>& kd, int shift)
{
    cplx s = 0.0;
    for (int l = 1; l <= alpha; ++l) s += P.B(alpha, l) / factorial(l) * kd[shift + l];
    return s;
}

cplx Gw(const Modulus& md, int w) { return (w % 2) ? cplx(0.0) : md.G(w); }

struct Data {
    const HurwitzPoint& p;
    const Modulus& md;
    int m;
    std::vector<PoleData> P;
    std::vector<cplx> y;    // y_j = N_j x_{N_j}(j); y[0] unused
    cplx Y = 0.0, S = 0.0;
    int rmax = 1;

    explicit Data(const HurwitzPoint& pt) : p(pt), md(pt.modulus()), m(pt.m())
    {
        int nmax = 0;
        for (int j = 0; j <= m; ++j) {
            P.emplace_back(p, j);
            nmax = std::max(nmax, p.n(j));
        }
        rmax = 2 * nmax + 1;
        y.assign(m + 1, 0.0);
        for (int j = 1; j <= m; ++j) {
            y[j] = double(P[j].N) * P[j].X;
            Y += y[j];
            S += y[j] * p.s(j);
        }
    }

    double a_coef(int N, int a) const { return double(N - a) * (2 * N + a) / double(N + a); }

    // sum_i sum_alpha a(N_i, alpha) x_alpha x_{N_i-alpha}
    cplx Pq() const
    {
        cplx s = 0.0;
        for (const auto& Q : P)
            for (int a = 1; a < Q.N; ++a) s += a_coef(Q.N, a) * Q.xa(a) * Q.xa(Q.N - a);
        return s;
    }

    cplx quartic() const
    {
        cplx A = 0.0, B = 0.0;
        for (const auto& Q : P)
            for (int a = 1; a < Q.N; ++a) {
                A += double(Q.N) * (Q.N - a) / double(Q.N + a) * Q.xa(a) * Q.xa(Q.N - a);
                B += double(Q.N - a) * Q.xa(a) * Q.xa(Q.N - a);
            }
        return 0.5 * md.G2() * A * B;
    }

    cplx first_line() const
    {
        const cplx u = p.u(), tau = p.tau();
        return u * u * tau / (2.0 * two_pi_i) + u * S + 0.5 * u * Pq();
    }

    cplx cross_ipi() const
    {
        cplx s = 0.0;
        for (int i = 1; i <= m; ++i)
            for (int j = 1; j <= m; ++j)
                if (i != j) s += y[i] * y[j];
        return 0.25 * ipi * s;
    }

    cplx tail() const
    {
        cplx s = Y * Y / double(P[0].N);
        for (int j = 1; j <= m; ++j) s += y[j] * P[j].X;
        return -0.75 * s;
    }

    // sum over poles j of the R-terms with B_{N_j,k}, k >= kmin
    cplx r_terms(int kmin) const
    {
        cplx s = 0.0;
        for (const auto& Q : P) {
            const double N = Q.N;
            for (int a = 1; a < Q.N; ++a)
                for (int k = kmin; k <= Q.N; ++k)
                    s += (N - a) * N * N / (k * (N + a)) * Q.xa(Q.N - a) * Q.B(Q.N, k) *
                         r_function(a + k - 1, k, Q.x);
        }
        return 0.5 * s;
    }

    cplx g_terms(int kmin) const
    {
        cplx s = 0.0;
        for (const auto& Q : P) {
            const double N = Q.N;
            for (int a = 1; a < Q.N; ++a)
                for (int k = kmin; k <= Q.N; ++k) {
                    if (k + a < 5) continue;
                    cplx inner = 0.0;
                    for (int l = 1; l <= a; ++l) {
                        if (k + l < 5) continue;
                        inner += binomial(k + l - 1, l) * Q.B(a, l) * Gw(md, k + l - 1) / double(k + l - 1);
                    }
                    s += ((k % 2) ? -1.0 : 1.0) * (N - a) * N * N / (k * (N + a)) * Q.xa(Q.N - a) * Q.B(Q.N, k) * inner;
                }
        }
        return 0.5 * s;
    }

    cplx r1_g_terms() const
    {
        cplx s = 0.0;
        for (const auto& Q : P) {
            const double N = Q.N;
            for (int a = 1; a < Q.N; ++a) s += (N - a) * N * Q.xa(Q.N - a) * Q.X * r_function(a, 1, Q.x);
            for (int l = 4; l <= Q.N - 1; ++l) s -= N * N / double(l * (l + 1)) * Q.X * Q.B(Q.N, l + 1) * Gw(md, l);
        }
        return 0.5 * s;
    }

    // the L-operator double sums with B_{N_j,k}, k >= kmin, on the arguments
    // s^i - s^j, s^i and -s^j
    cplx l_terms(int kmin, const std::vector<std::vector<std::vector<cplx>>>& Kij,
                 const std::vector<std::vector<cplx>>& Ki, const std::vector<std::vector<cplx>>& Kmj) const
    {
        auto sgn = [](int k) { return (k % 2) ? -1.0 : 1.0; };
        cplx s = 0.0;
        for (int i = 1; i <= m; ++i)
            for (int j = 1; j <= m; ++j) {
                if (i == j) continue;
                const auto& Qi = P[i];
                const auto& Qj = P[j];
                for (int a = 1; a < Qi.N; ++a) {
                    cplx inner = 0.0;
                    for (int k = kmin; k <= Qj.N; ++k)
                        inner += sgn(k) / factorial(k) * Qj.B(Qj.N, k) * bell_L(Qi, a, Kij[i][j], k - 1);
                    s += double(Qi.N - a) * Qi.N * Qj.N / double(Qi.N + a) * Qi.xa(Qi.N - a) * inner;
                }
            }
        const auto& Q0 = P[0];
        for (int i = 1; i <= m; ++i) {
            const auto& Qi = P[i];
            for (int a = 1; a < Qi.N; ++a) {
                cplx inner = 0.0;
                for (int k = kmin; k <= Q0.N; ++k)
                    inner += sgn(k) / factorial(k) * Q0.B(Q0.N, k) * bell_L(Qi, a, Ki[i], k - 1);
                s += double(Qi.N - a) * Qi.N * Q0.N / double(Qi.N + a) * Qi.xa(Qi.N - a) * inner;
            }
        }
        for (int j = 1; j <= m; ++j) {
            const auto& Qj = P[j];
            for (int a = 1; a < Q0.N; ++a) {
                cplx inner = 0.0;
                for (int k = kmin; k <= Qj.N; ++k)
                    inner += sgn(k) / factorial(k) * Qj.B(Qj.N, k) * bell_L(Q0, a, Kmj[j], k - 1);
                s += double(Q0.N - a) * Q0.N * Qj.N / double(Q0.N + a) * Q0.xa(Q0.N - a) * inner;
            }
        }
        return -0.5 * s;
    }
};

struct KTables {
    std::vector<std::vector<std::vector<cplx>>> ij;
    std::vector<std::vector<cplx>> i;
    std::vector<std::vector<cplx>> mj;
};

KTables k_tables(const Data& D, LogCursor& lg)
{
    KTables T;
    const int m = D.m;
    T.ij.assign(m + 1, std::vector<std::vector<cplx>>(m + 1));
    T.i.assign(m + 1, {});
    T.mj.assign(m + 1, {});
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j)
            if (i != j) T.ij[i][j] = k_table(D.p.s(i) - D.p.s(j), D.md, D.rmax, lg);
    for (int i = 1; i <= m; ++i) T.i[i] = k_table(D.p.s(i), D.md, D.rmax, lg);
    for (int j = 1; j <= m; ++j) T.mj[j] = k_table(-D.p.s(j), D.md, D.rmax, lg);
    return T;
}

cplx log_terms(const Data& D, LogCursor& lg)
{
    if (D.m == 0) return 0.0;
    cplx s = 0.0;
    for (int j = 1; j <= D.m; ++j) s += 0.5 * D.y[j] * D.y[j] * lg.log(D.P[j].xa(1));
    s += 0.5 * D.Y * D.Y * lg.log(D.P[0].xa(1));
    return s;
}

}  // namespace

cplx f_phi(const HurwitzPoint& p, LogCursor& lg)
{
    const Data D(p);
    const KTables T = k_tables(D, lg);
    const int m = D.m;
    const cplx G2 = D.md.G2();
    const cplx Pq = D.Pq();

    cplx F = D.first_line();
    F += 0.5 * G2 * D.S * D.S;
    F += 0.5 * G2 * D.S * Pq;
    F += D.quartic();

    cplx t5 = 0.0, t6 = 0.0, t7 = 0.0;
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j) {
            if (i == j) continue;
            const auto& Qi = D.P[i];
            for (int k = 1; k <= Qi.N; ++k)
                t5 += double(Qi.N) * D.P[j].N / factorial(k) * D.P[j].X * Qi.B(Qi.N, k) * T.ij[i][j][k - 1];
        }
    for (int i = 1; i <= m; ++i) {
        const auto& Qi = D.P[i];
        for (int k = 1; k <= Qi.N; ++k) t6 += double(Qi.N) * Qi.B(Qi.N, k) / factorial(k) * T.i[i][k - 1];
    }
    const auto& Q0 = D.P[0];
    for (int j = 1; j <= m; ++j)
        for (int k = 1; k <= Q0.N; ++k) t7 += D.y[j] * double(Q0.N) / factorial(k) * Q0.B(Q0.N, k) * T.mj[j][k - 1];
    F += 0.5 * t5 - 0.5 * D.Y * t6 + 0.5 * t7;

    F += D.l_terms(1, T.ij, T.i, T.mj);
    F += D.r_terms(1);
    F += D.g_terms(1);
    F += D.r1_g_terms();
    F += log_terms(D, lg);
    F += ipi * D.Y * D.Y + D.cross_ipi();
    F += D.tail();
    return F;
}

cplx first_line(const HurwitzPoint& p) { return Data(p).first_line(); }

cplx f_phi(const HurwitzPoint& p)
{
    LogCursor lg;
    return f_phi(p, lg);
}

cplx sigma2(const HurwitzPoint& p, LogCursor& lg)
{
    const Data D(p);
    const int m = D.m;
    cplx s = 0.5 * D.md.G2() * D.S * D.S;
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j)
            if (i != j) s += 0.5 * D.y[i] * D.y[j] * lg.K(p.s(i) - p.s(j), D.md);
    for (int j = 1; j <= m; ++j) s -= D.Y * D.y[j] * lg.K(p.s(j), D.md);
    s += log_terms(D, lg);
    s += 0.5 * ipi * D.Y * D.Y;
    return s;
}

cplx sigma3(const HurwitzPoint& p, LogCursor& lg)
{
    const Data D(p);
    const int m = D.m;
    const Modulus& md = D.md;
    const auto& Q0 = D.P[0];
    const cplx X0N0 = double(Q0.N) * Q0.X;

    std::vector<std::vector<std::vector<cplx>>> Kij(m + 1, std::vector<std::vector<cplx>>(m + 1));
    std::vector<std::vector<cplx>> Ki(m + 1), Kmj(m + 1);
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j)
            if (i != j) Kij[i][j] = k_table_nolog(p.s(i) - p.s(j), md, D.rmax);
    for (int i = 1; i <= m; ++i) Ki[i] = k_table_nolog(p.s(i), md, D.rmax);
    for (int j = 1; j <= m; ++j) Kmj[j] = k_table_nolog(-p.s(j), md, D.rmax);

    cplx s = 0.5 * md.G2() * D.S * D.Pq();
    cplx a = 0.0, b = 0.0, c = 0.0, d = 0.0;
    for (int i = 1; i <= m; ++i) {
        const auto& Qi = D.P[i];
        for (int j = 1; j <= m; ++j) {
            const auto& Qj = D.P[j];
            if (i != j) {
                for (int al = 1; al < Qi.N; ++al)
                    a += double(Qi.N - al) * Qi.N * Qj.N / double(Qi.N + al) * Qi.xa(Qi.N - al) * Qj.X *
                         bell_L(Qi, al, Kij[i][j], 0);
                for (int k = 2; k <= Qi.N; ++k)
                    c += double(Qi.N) * Qj.N / factorial(k) * Qj.X * Qi.B(Qi.N, k) * Kij[i][j][k - 1];
            }
            for (int k = 2; k <= Qi.N; ++k)
                d += double(Qi.N) * Qj.N / factorial(k) * Qj.X * Qi.B(Qi.N, k) * Ki[i][k - 1];
        }
        for (int al = 1; al < Qi.N; ++al)
            b += double(Qi.N - al) * Qi.N / double(Qi.N + al) * Qi.xa(Qi.N - al) * bell_L(Qi, al, Ki[i], 0);
    }
    s += 0.5 * a + 0.5 * X0N0 * b + 0.5 * c - 0.5 * d;

    cplx e = 0.0;
    for (const auto& Q : D.P) {
        const double N = Q.N;
        for (int al = 1; al < Q.N; ++al) {
            const cplx coef = (N - al) * N * N / (N + al) * Q.xa(Q.N - al) * Q.X;
            e += coef * r_function(al, 1, Q.x);
            for (int l = 4; l <= al; ++l) e -= coef * Q.B(al, l) * Gw(md, l) / double(l);
        }
    }
    s += 0.5 * e;
    s += D.r1_g_terms();

    cplx f = 0.0, g = 0.0;
    for (int j = 1; j <= m; ++j) {
        const auto& Qj = D.P[j];
        for (int al = 1; al < Q0.N; ++al)
            f += double(Q0.N - al) * Q0.N * Qj.N / double(Q0.N + al) * Q0.xa(Q0.N - al) * Qj.X *
                 bell_L(Q0, al, Kmj[j], 0);
        cplx h = 0.0;
        for (int k = 1; k <= Q0.N; ++k) {
            const cplx kv = (k == 1) ? lg.K(-p.s(j), md) : Kmj[j][k - 1];
            h += double(Q0.N) / factorial(k) * Q0.B(Q0.N, k) * kv;
        }
        g += D.y[j] * h;
    }
    s += 0.5 * f + 0.5 * g;

    cplx kk = 0.0;
    for (int j = 1; j <= m; ++j) kk += D.y[j] * lg.K(p.s(j), md);
    s -= 0.5 * X0N0 * kk;
    s += 0.5 * ipi * D.Y * D.Y;
    return s;
}

cplx sigma4(const HurwitzPoint& p)
{
    const Data D(p);
    const int m = D.m;
    KTables T;
    T.ij.assign(m + 1, std::vector<std::vector<cplx>>(m + 1));
    T.i.assign(m + 1, {});
    T.mj.assign(m + 1, {});
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j)
            if (i != j) T.ij[i][j] = k_table_nolog(p.s(i) - p.s(j), D.md, D.rmax);
    for (int i = 1; i <= m; ++i) T.i[i] = k_table_nolog(p.s(i), D.md, D.rmax);
    for (int j = 1; j <= m; ++j) T.mj[j] = k_table_nolog(-p.s(j), D.md, D.rmax);
    return D.quartic() + D.l_terms(2, T.ij, T.i, T.mj) + D.r_terms(2) + D.g_terms(2);
}

cplx sigma2(const HurwitzPoint& p)
{
    LogCursor lg;
    return sigma2(p, lg);
}

cplx sigma3(const HurwitzPoint& p)
{
    LogCursor lg;
    return sigma3(p, lg);
}

cplx f_phi_skeleton(const HurwitzPoint& p)
{
    const Data D(p);
    return D.first_line() + sigma2(p) + sigma3(p) + sigma4(p) + D.cross_ipi() + D.tail();
}

HurwitzPoint point_An(int n, cplx u, std::span<const cplx> xs, const Modulus& m)
{
    if (n < 1) throw Error(ErrorCode::InvalidOrder, "H_1(n) needs n >= 1");
    if (int(xs.size()) != n) throw Error(ErrorCode::IndexOutOfRange, "expected n coefficients");
    std::vector<cplx> row(xs.begin(), xs.end());
    row.push_back(0.0);
    return HurwitzPoint(BranchProfile{{n}}, m, {0.0}, {row}, u);
}

cplx f_phi_An(int n, cplx u, std::span<const cplx> xs, const Modulus& md)
{
    const HurwitzPoint p = point_An(n, u, xs, md);
    const std::vector<cplx> x = p.coefficients(0, 2 * n + 2);
    if (x[0] == 0.0) throw Error(ErrorCode::ZeroLeadingCoefficient, "x_1 = 0");
    const BellTable B(x, n + 1);
    const double N = n + 1;
    cplx F = u * u * md.tau() / (2.0 * two_pi_i);
    for (int a = 1; a <= n; ++a) F += 0.5 * u * (N - a) * (2 * N + a) / (N + a) * x[a - 1] * x[n - a];
    cplx q = 0.0;
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) q += (N - a) * (N - b) / (N + a) * x[a - 1] * x[b - 1] * x[n - a] * x[n - b];
    F += 0.5 * N * md.G2() * q;
    cplx r = 0.0, g = 0.0;
    for (int a = 1; a <= n; ++a)
        for (int k = 2; k <= n + 1; ++k) {
            const cplx c = (N - a) / (k * (N + a)) * x[n - a] * B(n + 1, k);
            r += c * r_function(a + k - 1, k, x);
            if (k + a < 5) continue;
            cplx inner = 0.0;
            for (int l = 1; l <= a; ++l)
                if (k + l >= 5) inner += binomial(k + l - 1, l) * B(a, l) * Gw(md, k + l - 1) / double(k + l - 1);
            g += ((k % 2) ? -1.0 : 1.0) * c * inner;
        }
    F += 0.5 * N * N * (r + g);
    return F;
}

HurwitzPoint point_An0(int n, cplx u, cplx s, std::span<const cplx> xs, cplx y, const Modulus& m)
{
    if (n < 0) throw Error(ErrorCode::InvalidOrder, "H_1(n,0) needs n >= 0");
    if (int(xs.size()) != n) throw Error(ErrorCode::IndexOutOfRange, "expected n coefficients");
    std::vector<cplx> row(xs.begin(), xs.end());
    row.push_back(-y / double(n + 1));
    return HurwitzPoint(BranchProfile{{n, 0}}, m, {0.0, s}, {row, {y}}, u);
}

cplx f_phi_An0(int n, cplx u, cplx s, std::span<const cplx> xs, cplx y, const Modulus& md, LogCursor& lg)
{
    const HurwitzPoint p = point_An0(n, u, s, xs, y, md);
    const PoleData Q(p, 0);
    const double N = n + 1;
    const cplx G2 = md.G2();
    const cplx x1 = Q.xa(1);
    if (x1 * y == 0.0) throw Error(ErrorCode::BranchPoint, "x_1 y = 0");
    const auto kd = k_table(-s, md, 2 * n + 2, lg);
    const cplx Ks = lg.K(s, md);

    cplx F = u * u * md.tau() / (2.0 * two_pi_i) + u * y * s;
    cplx q2 = 0.0, q3 = 0.0;
    for (int a = 1; a <= n; ++a) {
        q2 += (N - a) * (2 * N + a) / (N + a) * Q.xa(a) * Q.xa(n + 1 - a);
        q3 += ((N - a) / (N + a) + (N - a) / N) * Q.xa(a) * Q.xa(n + 1 - a);
    }
    F += 0.5 * u * q2 + 0.5 * y * y * s * s * G2 + 0.5 * N * y * s * G2 * q3;
    cplx q4 = 0.0;
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
            q4 += (N - a) * (N - b) / (N + a) * Q.xa(a) * Q.xa(b) * Q.xa(n + 1 - a) * Q.xa(n + 1 - b);
    F += 0.5 * N * G2 * q4;
    F -= y * y * Ks;
    cplx t = 0.0;
    for (int k = 2; k <= n + 1; ++k) t += Q.B(n + 1, k) / factorial(k) * kd[k - 1];
    for (int a = 1; a <= n; ++a) t += (N - a) / (N + a) * Q.xa(n + 1 - a) * bell_L(Q, a, kd, 0);
    F += 0.5 * N * y * t;
    cplx r1 = 0.0, r = 0.0, g = 0.0;
    for (int a = 1; a <= n; ++a) {
        r1 += ((N - a) / (N + a) + (N - a) / N) * Q.xa(n + 1 - a) * r_function(a, 1, Q.x);
        for (int k = 1; k <= n + 1; ++k) {
            const cplx c = (N - a) / (k * (N + a)) * Q.xa(n + 1 - a) * Q.B(n + 1, k);
            if (k >= 2) r += c * r_function(a + k - 1, k, Q.x);
            if (k + a < 5) continue;
            cplx inner = 0.0;
            for (int l = 1; l <= a; ++l)
                if (k + l >= 5) inner += binomial(k + l - 1, l) * Q.B(a, l) * Gw(md, k + l - 1) / double(k + l - 1);
            g += ((k % 2) ? -1.0 : 1.0) * c * inner;
        }
    }
    F += -0.5 * N * y * r1 + 0.5 * N * N * (r + g);
    cplx e = 0.0;
    for (int l = 4; l <= n; ++l) e += Q.B(n + 1, l + 1) * Gw(md, l) / double(l * (l + 1));
    F += 0.5 * N * y * e;
    F += 0.5 * y * y * lg.log(x1 * y) + 0.5 * ipi * y * y - 0.75 * (N + 1) / N * y * y;
    return F;
}

cplx f_phi_An0(int n, cplx u, cplx s, std::span<const cplx> xs, cplx y, const Modulus& m)
{
    LogCursor lg;
    return f_phi_An0(n, u, s, xs, y, m, lg);
}

cplx f_phi_case0(cplx u, std::span<const cplx> s, std::span<const cplx> x, const Modulus& md, LogCursor& lg)
{
    const std::size_t m = s.size();
    if (m < 1 || x.size() != m) throw Error(ErrorCode::IndexOutOfRange, "case0 needs m >= 1 and matching sizes");
    cplx xs = 0.0, X = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        xs += x[j] * s[j];
        X += x[j];
    }
    cplx F = u * u * md.tau() / (2.0 * two_pi_i) + u * xs + 0.5 * md.G2() * xs * xs;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (i != j) F += 0.5 * x[i] * x[j] * lg.K(s[i] - s[j], md);
    for (std::size_t j = 0; j < m; ++j) F -= X * x[j] * lg.K(s[j], md);
    for (std::size_t j = 0; j < m; ++j) F += 0.5 * x[j] * x[j] * lg.log(x[j]);
    F += 0.5 * X * X * lg.log(X);
    cplx cross = 0.0, q = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (i != j) cross += x[i] * x[j];
            q += (1.0 + (i == j ? 1.0 : 0.0)) * x[i] * x[j];
        }
    F += ipi * X * X + 0.25 * ipi * cross - 0.75 * q;
    return F;
}

cplx f_phi_case1(cplx u, std::span<const cplx> s, std::span<const cplx> t, std::span<const cplx> x,
                 const Modulus& md, LogCursor& lg)
{
    const std::size_t m = s.size();
    if (t.size() != m || x.size() != m + 1) throw Error(ErrorCode::IndexOutOfRange, "case1 size mismatch");
    const cplx G2 = md.G2();
    cplx ts = 0.0, T = 0.0, x2 = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        ts += t[j] * s[j];
        T += t[j];
    }
    for (cplx v : x) x2 += v * v;
    const cplx x0s = x[0] * x[0];
    cplx F = u * u * md.tau() / (2.0 * two_pi_i) + 2.0 * u * ts + u * x2 + 2.0 * G2 * ts * (ts + x2);
    F += 0.5 * G2 * x2 * x2;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) continue;
            const cplx v = s[i] - s[j];
            const cplx xi2 = x[i + 1] * x[i + 1], xj2 = x[j + 1] * x[j + 1];
            F += 2.0 * t[i] * t[j] * lg.K(v, md);
            F += 2.0 * xi2 * t[j] * bigK(v, md, 1);
            F -= 0.5 * xi2 * xj2 * bigK(v, md, 2);
        }
    cplx tK = 0.0, xK1 = 0.0, tK1 = 0.0, xK2 = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const cplx xj2 = x[j + 1] * x[j + 1];
        tK += t[j] * lg.K(s[j], md);
        const cplx k1 = bigK(s[j], md, 1), k2 = bigK(s[j], md, 2);
        xK1 += xj2 * k1;
        tK1 += t[j] * k1;
        xK2 += xj2 * k2;
    }
    F += -4.0 * T * tK - 2.0 * T * xK1 - 2.0 * x0s * tK1 - x0s * xK2;
    cplx tt = 0.0, cross = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        F += 2.0 * t[j] * t[j] * lg.log(x[j + 1]);
        tt += t[j] * t[j];
    }
    if (m > 0) F += 2.0 * T * T * lg.log(x[0]);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (i != j) cross += t[i] * t[j];
    F += 2.0 * ipi * T * T + ipi * cross - 3.0 * T * T - 4.0 * tt;
    return F;
}

cplx f_phi_case1(const HurwitzPoint& p, LogCursor& lg)
{
    const int m = p.m();
    for (int j = 0; j <= m; ++j)
        if (p.n(j) != 1) throw Error(ErrorCode::InvalidOrder, "case1 needs every n_j = 1");
    std::vector<cplx> s(m), t(m), x(m + 1);
    for (int j = 1; j <= m; ++j) {
        s[j - 1] = p.s(j);
        t[j - 1] = p.x(j, 2);
    }
    for (int j = 0; j <= m; ++j) x[j] = p.x(j, 1);
    return f_phi_case1(p.u(), s, t, x, p.modulus(), lg);
}

std::vector<cplx> jacobi_forms(int n, cplx u, std::span<const cplx> xs, const Modulus& m)
{
    if (n < 1) throw Error(ErrorCode::InvalidOrder, "Jacobi forms need n >= 1");
    if (int(xs.size()) != n) throw Error(ErrorCode::IndexOutOfRange, "expected n coefficients");
    std::vector<cplx> x(xs.begin(), xs.end());
    x.push_back(0.0);
    const BellTable B(x, n + 1);
    const double N = n + 1;
    std::vector<cplx> out{u + 0.5 * N * B(n + 1, 2) * m.G2()};
    for (int k = 2; k <= n + 1; ++k) out.push_back(N / k * B(n + 1, k));
    return out;
}

cplx jacobi_lambda(std::span<const cplx> forms, cplx z, const Modulus& m)
{
    cplx l = forms[0];
    for (std::size_t i = 1; i < forms.size(); ++i) {
        const int k = int(i) + 1;
        l += ((k % 2) ? -1.0 : 1.0) / factorial(k - 1) * forms[i] * wp(z, m, k - 2);
    }
    return l;
}

}  // namespace wdvv
