#pragma once

#include <Eigen/Dense>

#include <string>

#include "xlr/series.hpp"

namespace xlr {

/// Least-squares cubic mapping objective -> subjective scores,
/// predicted(x) = c0 + c1*x + c2*x^2 + c3*x^3.
struct CubicFit {
    Eigen::Vector4d coefficients = Eigen::Vector4d::Zero();
    double residual_rmse = 0.0;
    bool converged = false;
    int iterations = 0;

    double predict(double x) const {
        return coefficients[0] + x * (coefficients[1] + x * (coefficients[2] + x * coefficients[3]));
    }
};

/// Normal-equations seed plus iterative refinement on the residual, which
/// keeps the solve honest on poorly conditioned grids. converged is false
/// when the iteration cap is hit.
CubicFit fit_cubic(const Eigen::VectorXd& objective, const Eigen::VectorXd& subjective);

/// Sample Pearson correlation. Throws on length mismatch, length < 2, or
/// zero variance in either argument.
double pcc(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Spearman rank correlation with average ranks on ties.
double srocc(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

double rmse(const Eigen::VectorXd& a, const Eigen::VectorXd& b);
double mae(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// std::vector conveniences; these map, they do not copy.
double pcc(const std::vector<double>& a, const std::vector<double>& b);
double srocc(const std::vector<double>& a, const std::vector<double>& b);
double rmse(const std::vector<double>& a, const std::vector<double>& b);
double mae(const std::vector<double>& a, const std::vector<double>& b);

/// Real-vs-estimated comparison: frame-to-frame error and correlation
/// statistics plus both pooled scores from each side.
struct PairReport {
    double mae = 0.0;
    double pcc = 0.0;
    double srocc = 0.0;
    double real_mxlr = 0.0;
    double est_mxlr = 0.0;
    double real_msxlr = 0.0;
    double est_msxlr = 0.0;
};

/// Requires identical frame counts and decode-index ordering.
PairReport evaluate_pair(const XlrSeries& real, const XlrSeries& estimated);

/// Human-readable block, one statistic per line.
std::string format_report_text(const PairReport& report);

/// CSV row: sequence,structure,plr,real_mxlr,est_mxlr,real_msxlr,est_msxlr,mae,pcc,srocc
std::string report_csv_header();
std::string format_report_csv_row(const std::string& sequence, const std::string& structure, double plr,
                                  const PairReport& report);

}  // namespace xlr
