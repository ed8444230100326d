#include "wickfock/fock.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "wickfock/errors.hpp"

namespace wickfock {

FockBasis::FockBasis(std::size_t dim, unsigned cutoff)
    : dim_(dim), cutoff_(cutoff), index_(enumerate_multiindices(dim, cutoff)) {
    for (std::size_t i = 0; i < index_.size(); ++i) pos_.emplace(index_[i], i);
}

std::size_t FockBasis::position(const MultiIndex& alpha) const {
    auto it = pos_.find(alpha);
    return it == pos_.end() ? npos : it->second;
}

Poly apply_normal_ordered(const NOTerm& term, const Poly& f) {
    Poly df = f.derivative(term.annihilate, 0);
    Poly r(f.nvars());
    for (const auto& [e, c] : df.terms()) r.add_term(e.plus(term.create), c * term.coeff);
    return r;
}

Poly apply_normal_ordered(std::span<const NOTerm> op, const Poly& f) {
    Poly r(f.nvars());
    for (const auto& t : op) r += apply_normal_ordered(t, f);
    return r;
}

ExactCoeff fock_inner(const Poly& f, const Poly& g) {
    if (f.nvars() != g.nvars()) throw InputError("fock_inner: dimension mismatch");
    ExactCoeff acc;
    for (const auto& [e, c] : f.terms()) {
        ExactCoeff gc = g.coeff(e);
        if (gc.is_zero()) continue;
        acc += c * gc.conj() * ExactCoeff(mpq_class(e.factorial()));
    }
    return acc;
}

FockVector::FockVector(FockBasis basis, Poly monomial_coeffs)
    : basis_(std::move(basis)), exact_(std::move(monomial_coeffs)) {
    if (exact_->nvars() != basis_.dim())
        throw InputError("FockVector: polynomial dimension mismatch");
    if (exact_->degree() > static_cast<int>(basis_.cutoff()))
        throw InputError("FockVector: polynomial degree beyond the cutoff");
}

FockVector::FockVector(FockBasis basis, Eigen::VectorXcd orthonormal)
    : basis_(std::move(basis)), float_(std::move(orthonormal)) {
    if (static_cast<std::size_t>(float_.size()) != basis_.size())
        throw InputError("FockVector: coordinate length mismatch");
}

const Poly& FockVector::exact_poly() const {
    if (!exact_) throw InputError("FockVector: floating vector has no exact form");
    return *exact_;
}

Eigen::VectorXcd FockVector::to_float() const {
    if (!exact_) return float_;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis_.size()));
    for (const auto& [e, c] : exact_->terms()) {
        std::size_t i = basis_.position(e);
        v(static_cast<Eigen::Index>(i)) =
            c.to_complex() * std::sqrt(mpq_class(e.factorial()).get_d());
    }
    return v;
}

FockVector FockVector::apply(std::span<const NOTerm> op) const {
    if (exact_) {
        Poly image = apply_normal_ordered(op, *exact_);
        // Drop image components beyond the cutoff, as the matrix does.
        Poly trunc(image.nvars());
        for (const auto& [e, c] : image.terms())
            if (e.total() <= basis_.cutoff()) trunc.add_term(e, c);
        return {basis_, std::move(trunc)};
    }
    // Floating path: rescale the exact monomial action per basis column.
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(float_.size());
    for (std::size_t col = 0; col < basis_.size(); ++col) {
        if (float_(static_cast<Eigen::Index>(col)) == std::complex<double>(0.0)) continue;
        Poly f = Poly::monomial(basis_.dim(), basis_.at(col), ExactCoeff(1));
        Poly image = apply_normal_ordered(op, f);
        double colf = std::sqrt(mpq_class(basis_.at(col).factorial()).get_d());
        for (const auto& [e, c] : image.terms()) {
            std::size_t row = basis_.position(e);
            if (row == FockBasis::npos) continue;
            double rowf = std::sqrt(mpq_class(e.factorial()).get_d());
            out(static_cast<Eigen::Index>(row)) +=
                float_(static_cast<Eigen::Index>(col)) * c.to_complex() * rowf / colf;
        }
    }
    return {basis_, std::move(out)};
}

std::complex<double> FockVector::inner(const FockVector& other) const {
    if (!(basis_ == other.basis_)) throw InputError("FockVector: basis mismatch");
    if (exact_ && other.exact_) return fock_inner(*exact_, *other.exact_).to_complex();
    Eigen::VectorXcd a = to_float(), b = other.to_float();
    return b.dot(a);  // Eigen's dot conjugates its receiver
}

double FockVector::norm() const { return std::sqrt(std::abs(inner(*this).real())); }

ExactFockMatrix::ExactFockMatrix(FockBasis basis)
    : basis_(std::move(basis)),
      t_(basis_.size(), std::vector<ExactCoeff>(basis_.size())) {}

void ExactFockMatrix::set(std::size_t row, std::size_t col, const ExactCoeff& v) {
    t_[row][col] = v;
    if (!v.is_zero()) {
        unsigned dr = basis_.at(row).total(), dc = basis_.at(col).total();
        unsigned gap = dr > dc ? dr - dc : dc - dr;
        if (gap > band_) band_ = gap;
    }
}

ExactFockMatrix ExactFockMatrix::adjoint() const {
    // <Op* e_a, e_b> = conj(<Op e_b, e_a>); in unnormalized storage the
    // normalization ratio becomes the rational factor alpha!/beta!.
    ExactFockMatrix r(basis_);
    const std::size_t n = size();
    for (std::size_t row = 0; row < n; ++row) {
        mpq_class rowfact(basis_.at(row).factorial());
        for (std::size_t col = 0; col < n; ++col) {
            if (t_[col][row].is_zero()) continue;
            mpq_class ratio = mpq_class(basis_.at(col).factorial()) / rowfact;
            r.set(row, col, t_[col][row].conj() * ExactCoeff(ratio));
        }
    }
    return r;
}

ExactFockMatrix ExactFockMatrix::operator+(const ExactFockMatrix& o) const {
    if (!(basis_ == o.basis_)) throw InputError("ExactFockMatrix: basis mismatch");
    ExactFockMatrix r(basis_);
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j) r.set(i, j, t_[i][j] + o.t_[i][j]);
    return r;
}

ExactFockMatrix ExactFockMatrix::operator-(const ExactFockMatrix& o) const {
    if (!(basis_ == o.basis_)) throw InputError("ExactFockMatrix: basis mismatch");
    ExactFockMatrix r(basis_);
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j) r.set(i, j, t_[i][j] - o.t_[i][j]);
    return r;
}

ExactFockMatrix ExactFockMatrix::operator*(const ExactFockMatrix& o) const {
    if (!(basis_ == o.basis_)) throw InputError("ExactFockMatrix: basis mismatch");
    ExactFockMatrix r(basis_);
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j) {
            ExactCoeff acc;
            for (std::size_t k = 0; k < size(); ++k) {
                if (t_[i][k].is_zero() || o.t_[k][j].is_zero()) continue;
                acc += t_[i][k] * o.t_[k][j];
            }
            r.set(i, j, acc);
        }
    return r;
}

ExactFockMatrix ExactFockMatrix::scaled(const ExactCoeff& c) const {
    ExactFockMatrix r(basis_);
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j) r.set(i, j, t_[i][j] * c);
    return r;
}

bool ExactFockMatrix::operator==(const ExactFockMatrix& o) const {
    if (!(basis_ == o.basis_)) return false;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j)
            if (t_[i][j] != o.t_[i][j]) return false;
    return true;
}

std::complex<double> ExactFockMatrix::element(std::size_t row, std::size_t col) const {
    if (t_[row][col].is_zero()) return 0.0;
    mpq_class ratio = mpq_class(basis_.at(row).factorial()) /
                      mpq_class(basis_.at(col).factorial());
    return t_[row][col].to_complex() * std::sqrt(ratio.get_d());
}

Eigen::MatrixXcd ExactFockMatrix::to_float() const {
    const auto n = static_cast<Eigen::Index>(size());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = element(i, j);
    return m;
}

ExactFockMatrix matrix_of(std::span<const NOTerm> op, const FockBasis& basis) {
    ExactFockMatrix m(basis);
    const std::size_t d = basis.dim();
    for (std::size_t col = 0; col < basis.size(); ++col) {
        Poly f = Poly::monomial(d, basis.at(col), ExactCoeff(1));
        Poly image = apply_normal_ordered(op, f);
        for (const auto& [e, c] : image.terms()) {
            std::size_t row = basis.position(e);
            if (row == FockBasis::npos) continue;  // image degree beyond cutoff
            m.set(row, col, m.at(row, col) + c);
        }
    }
    return m;
}

ExactFockMatrix matrix_of(std::span<const NOTerm> op, std::size_t dim, unsigned cutoff) {
    return matrix_of(op, FockBasis(dim, cutoff));
}

std::pair<ExactFockMatrix, ExactFockMatrix> hermitian_split(const ExactFockMatrix& m) {
    ExactFockMatrix adj = m.adjoint();
    ExactCoeff half = ExactCoeff::rational(1, 2);
    return {(m + adj).scaled(half), (m - adj).scaled(half)};
}

double min_eig_sym(const Eigen::MatrixXcd& h, double tol) {
    double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    double dev = (h - h.adjoint()).cwiseAbs().maxCoeff();
    if (dev > tol * scale)
        throw PreconditionError("min_eig_sym: matrix is not self-adjoint within tolerance");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("min_eig_sym: eigensolver did not converge");
    return solver.eigenvalues().minCoeff();
}

double operator_norm(const Eigen::MatrixXcd& m) {
    if (m.rows() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()(0);
}

void matrix_to_csv(const ExactFockMatrix& m, std::ostream& os) {
    const std::size_t n = m.size();
    os << "basis";
    for (std::size_t j = 0; j < n; ++j) os << "," << m.basis().at(j).to_string();
    os << "\n";
    char buf[96];
    for (std::size_t i = 0; i < n; ++i) {
        os << m.basis().at(i).to_string();
        for (std::size_t j = 0; j < n; ++j) {
            std::complex<double> v = m.element(i, j);
            std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", v.real(), v.imag());
            os << "," << buf;
        }
        os << "\n";
    }
}

} // namespace wickfock
