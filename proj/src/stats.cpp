#include "xlr/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "xlr/errors.hpp"

namespace xlr {

namespace {

void check_pair_lengths(const Eigen::VectorXd& a, const Eigen::VectorXd& b, Eigen::Index min_len) {
    if (a.size() != b.size())
        throw ValidationError("length mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    if (a.size() < min_len)
        throw ValidationError("need at least " + std::to_string(min_len) + " samples, got " +
                              std::to_string(a.size()));
}

Eigen::MatrixXd vandermonde_cubic(const Eigen::VectorXd& x) {
    Eigen::MatrixXd a(x.size(), 4);
    a.col(0).setOnes();
    a.col(1) = x;
    a.col(2) = x.array().square();
    a.col(3) = x.array().cube();
    return a;
}

/// Ranks with the average convention on ties, 1-based.
Eigen::VectorXd average_ranks(const Eigen::VectorXd& v) {
    const Eigen::Index n = v.size();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&v](Eigen::Index i, Eigen::Index j) { return v[i] < v[j]; });

    Eigen::VectorXd ranks(n);
    Eigen::Index i = 0;
    while (i < n) {
        Eigen::Index j = i;
        while (j + 1 < n && v[order[static_cast<std::size_t>(j + 1)]] == v[order[static_cast<std::size_t>(i)]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;  // mean of positions i..j, 1-based
        for (Eigen::Index k = i; k <= j; ++k) ranks[order[static_cast<std::size_t>(k)]] = avg;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

CubicFit fit_cubic(const Eigen::VectorXd& objective, const Eigen::VectorXd& subjective) {
    check_pair_lengths(objective, subjective, 4);
    if ((objective.array() == objective[0]).all())
        throw ValidationError("degenerate fit input: all objective values identical");

    const Eigen::MatrixXd a = vandermonde_cubic(objective);
    const Eigen::Matrix4d normal = a.transpose() * a;
    const Eigen::LDLT<Eigen::Matrix4d> solver(normal);

    CubicFit fit;
    fit.coefficients = solver.solve(a.transpose() * subjective);

    // Refine on the residual until the correction stalls.
    constexpr int kMaxIterations = 50;
    constexpr double kTolerance = 1e-12;
    const double scale = std::max(1.0, subjective.array().abs().maxCoeff());
    for (fit.iterations = 1; fit.iterations <= kMaxIterations; ++fit.iterations) {
        const Eigen::VectorXd residual = subjective - a * fit.coefficients;
        const Eigen::Vector4d delta = solver.solve(a.transpose() * residual);
        fit.coefficients += delta;
        if (delta.array().abs().maxCoeff() <= kTolerance * scale) {
            fit.converged = true;
            break;
        }
    }
    const Eigen::VectorXd residual = subjective - a * fit.coefficients;
    fit.residual_rmse = std::sqrt(residual.squaredNorm() / static_cast<double>(residual.size()));
    return fit;
}

double pcc(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    check_pair_lengths(a, b, 2);
    const Eigen::VectorXd da = a.array() - a.mean();
    const Eigen::VectorXd db = b.array() - b.mean();
    const double var_a = da.squaredNorm();
    const double var_b = db.squaredNorm();
    if (var_a == 0.0 || var_b == 0.0) throw ValidationError("pcc undefined: zero variance input");
    return da.dot(db) / std::sqrt(var_a * var_b);
}

double srocc(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    check_pair_lengths(a, b, 2);
    return pcc(average_ranks(a), average_ranks(b));
}

double rmse(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    check_pair_lengths(a, b, 1);
    return std::sqrt((a - b).squaredNorm() / static_cast<double>(a.size()));
}

double mae(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    check_pair_lengths(a, b, 1);
    return (a - b).array().abs().mean();
}

namespace {
Eigen::Map<const Eigen::VectorXd> as_vector(const std::vector<double>& v) {
    return {v.data(), static_cast<Eigen::Index>(v.size())};
}
}  // namespace

double pcc(const std::vector<double>& a, const std::vector<double>& b) { return pcc(as_vector(a), as_vector(b)); }
double srocc(const std::vector<double>& a, const std::vector<double>& b) {
    return srocc(as_vector(a), as_vector(b));
}
double rmse(const std::vector<double>& a, const std::vector<double>& b) { return rmse(as_vector(a), as_vector(b)); }
double mae(const std::vector<double>& a, const std::vector<double>& b) { return mae(as_vector(a), as_vector(b)); }

PairReport evaluate_pair(const XlrSeries& real, const XlrSeries& estimated) {
    if (real.per_frame.size() != estimated.per_frame.size())
        throw ValidationError("series shape mismatch: " + std::to_string(real.per_frame.size()) + " vs " +
                              std::to_string(estimated.per_frame.size()) + " frames");
    for (std::size_t i = 0; i < real.per_frame.size(); ++i)
        if (real.per_frame[i].decode_index != estimated.per_frame[i].decode_index)
            throw ValidationError("series ordering mismatch at position " + std::to_string(i));

    const std::vector<double> r = real.values();
    const std::vector<double> e = estimated.values();
    PairReport report;
    report.mae = mae(r, e);
    report.pcc = pcc(r, e);
    report.srocc = srocc(r, e);
    report.real_mxlr = real.mxlr;
    report.est_mxlr = estimated.mxlr;
    report.real_msxlr = real.msxlr;
    report.est_msxlr = estimated.msxlr;
    return report;
}

namespace {
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}
}  // namespace

std::string format_report_text(const PairReport& r) {
    std::ostringstream out;
    out << "real  MXLR  " << fmt(r.real_mxlr) << "   MSXLR " << fmt(r.real_msxlr) << '\n'
        << "est   MXLR  " << fmt(r.est_mxlr) << "   MSXLR " << fmt(r.est_msxlr) << '\n'
        << "frame-to-frame  MAE " << fmt(r.mae) << "  PCC " << fmt(r.pcc) << "  SROCC " << fmt(r.srocc) << '\n';
    return out.str();
}

std::string report_csv_header() {
    return "sequence,structure,plr,real_mxlr,est_mxlr,real_msxlr,est_msxlr,mae,pcc,srocc";
}

std::string format_report_csv_row(const std::string& sequence, const std::string& structure, double plr,
                                  const PairReport& r) {
    std::ostringstream out;
    out << sequence << ',' << structure << ',' << plr << ',' << fmt(r.real_mxlr) << ',' << fmt(r.est_mxlr) << ','
        << fmt(r.real_msxlr) << ',' << fmt(r.est_msxlr) << ',' << fmt(r.mae) << ',' << fmt(r.pcc) << ','
        << fmt(r.srocc);
    return out.str();
}

}  // namespace xlr
