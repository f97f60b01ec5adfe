#include "journeynet/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "journeynet/error.hpp"

namespace journeynet::dist {

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_sf(double x) noexcept { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorKind::InvalidArgument, "normal_quantile needs p in (0, 1)");
  // Acklam's rational approximation, polished with two Newton steps.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double plow = 0.02425;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  for (int i = 0; i < 2; ++i) {
    const double err = normal_cdf(x) - p;
    const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    x -= err / pdf;
  }
  return x;
}

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 100000;

// Series for P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double sum = 1.0 / a;
  double term = sum;
  for (int n = 1; n < kMaxIter; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for Q(a, x), valid for x >= a + 1.
double gamma_q_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw Error(ErrorKind::InvalidArgument, "gamma_p needs a > 0 and x >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_fraction(a, x);
}

double gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw Error(ErrorKind::InvalidArgument, "gamma_q needs a > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_fraction(a, x);
}

double chi2_sf(double x, double df) {
  if (!(df > 0.0)) throw Error(ErrorKind::InvalidArgument, "chi-squared needs df > 0");
  if (x <= 0.0) return 1.0;
  return gamma_q(0.5 * df, 0.5 * x);
}

namespace {

// Probability that the range of `cc` standard normals is below w
// (one range, rr = 1), by Gauss-Legendre quadrature of Hartley's form.
double range_prob(double w, double cc) {
  constexpr int nleg = 12;
  constexpr int ihalf = 6;
  constexpr double C1 = -30.0;
  constexpr double C2 = -50.0;
  constexpr double C3 = 60.0;
  constexpr double bb = 8.0;
  constexpr double wlar = 3.0;
  constexpr double wincr1 = 2.0;
  constexpr double wincr2 = 3.0;
  static constexpr double xleg[ihalf] = {0.981560634246719250690549090149, 0.904117256370474856678465866119,
                                         0.769902674194304687036893833213, 0.587317954286617447296702418941,
                                         0.367831498998180193752691536644, 0.125233408511468915472441369464};
  static constexpr double aleg[ihalf] = {0.047175336386511827194615961485, 0.106939325995318430960254718194,
                                         0.160078328543346226334652529543, 0.203167426723065921749064455810,
                                         0.233492536538354808760849898925, 0.249147045813402785000562436043};
  const double qsqz = w * 0.5;
  if (qsqz >= bb) return 1.0;

  double pr_w = 2.0 * normal_cdf(qsqz) - 1.0;
  pr_w = pr_w >= std::exp(C2 / cc) ? std::pow(pr_w, cc) : 0.0;

  const double wincr = w > wlar ? wincr1 : wincr2;
  double blb = qsqz;
  const double binc = (bb - qsqz) / wincr;
  double bub = blb + binc;
  double einsum = 0.0;
  const double cc1 = cc - 1.0;
  for (int wi = 1; wi <= static_cast<int>(wincr); ++wi) {
    double elsum = 0.0;
    const double a = 0.5 * (bub + blb);
    const double b = 0.5 * (bub - blb);
    for (int jj = 1; jj <= nleg; ++jj) {
      int j;
      double xx;
      if (ihalf < jj) {
        j = nleg - jj + 1;
        xx = xleg[j - 1];
      } else {
        j = jj;
        xx = -xleg[j - 1];
      }
      const double ac = a + b * xx;
      const double qexpo = ac * ac;
      if (qexpo > C3) break;
      const double pplus = 2.0 * normal_cdf(ac);
      const double pminus = 2.0 * normal_cdf(ac - w);
      double rinsum = pplus * 0.5 - pminus * 0.5;
      if (rinsum >= std::exp(C1 / cc1)) {
        rinsum = aleg[j - 1] * std::exp(-0.5 * qexpo) * std::pow(rinsum, cc1);
        elsum += rinsum;
      }
    }
    elsum *= 2.0 * b * cc / std::sqrt(2.0 * std::numbers::pi);
    einsum += elsum;
    blb = bub;
    bub += binc;
  }
  pr_w += einsum;
  if (pr_w <= std::exp(C1)) return 0.0;
  return pr_w >= 1.0 ? 1.0 : pr_w;
}

}  // namespace

double studentized_range_cdf(double q, double k, double df) {
  if (!(k >= 2.0) || !(df >= 2.0)) {
    throw Error(ErrorKind::InvalidArgument, "studentized range needs k >= 2 and df >= 2");
  }
  if (q <= 0.0) return 0.0;
  if (std::isinf(q)) return 1.0;

  constexpr int nlegq = 16;
  constexpr int ihalfq = 8;
  constexpr double eps1 = -30.0;
  constexpr double eps2 = 1.0e-14;
  constexpr double dhaf = 100.0;
  constexpr double dquar = 800.0;
  constexpr double deigh = 5000.0;
  constexpr double dlarg = 25000.0;
  static constexpr double xlegq[ihalfq] = {
      0.989400934991649932596154173450, 0.944575023073232576077988415535, 0.865631202387831743880467897712,
      0.755404408355003033895101194847, 0.617876244402643748446671764049, 0.458016777657227386342419442984,
      0.281603550779258913230460501460, 0.950125098376374401853193354250e-1};
  static constexpr double alegq[ihalfq] = {
      0.271524594117540948517805724560e-1, 0.622535239386478928628438369944e-1,
      0.951585116824927848099251076022e-1, 0.124628971255533872052476282192,
      0.149595988816576732081501730547,    0.169156519395002538189312079030,
      0.182603415044923588866763667969,    0.189450610455068496285396723208};

  if (df > dlarg) return range_prob(q, k);

  const double f2 = df * 0.5;
  double f2lf = f2 * std::log(df) - df * std::numbers::ln2 - std::lgamma(f2);
  const double f21 = f2 - 1.0;
  const double ff4 = df * 0.25;
  double ulen;
  if (df <= dhaf) {
    ulen = 1.0;
  } else if (df <= dquar) {
    ulen = 0.5;
  } else if (df <= deigh) {
    ulen = 0.25;
  } else {
    ulen = 0.125;
  }
  f2lf += std::log(ulen);

  double ans = 0.0;
  for (int i = 1; i <= 50; ++i) {
    double otsum = 0.0;
    const double twa1 = (2 * i - 1) * ulen;
    for (int jj = 1; jj <= nlegq; ++jj) {
      int j;
      double t1;
      if (ihalfq < jj) {
        j = jj - ihalfq - 1;
        t1 = f2lf + f21 * std::log(twa1 + xlegq[j] * ulen) - (xlegq[j] * ulen + twa1) * ff4;
      } else {
        j = jj - 1;
        t1 = f2lf + f21 * std::log(twa1 - xlegq[j] * ulen) + (xlegq[j] * ulen - twa1) * ff4;
      }
      if (t1 >= eps1) {
        const double qsqz = ihalfq < jj ? q * std::sqrt((xlegq[j] * ulen + twa1) * 0.5)
                                        : q * std::sqrt((-(xlegq[j] * ulen) + twa1) * 0.5);
        otsum += range_prob(qsqz, k) * alegq[j] * std::exp(t1);
      }
    }
    if (i * ulen >= 1.0 && otsum <= eps2) break;
    ans += otsum;
  }
  return ans > 1.0 ? 1.0 : ans;
}

}  // namespace journeynet::dist
