#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gencontact/gen_section.hpp"
#include "gencontact/linear_solve.hpp"

namespace gencontact {

/// Generalized almost contact pair (E, L): E is spanned by two real sections
/// of signature (1,1), L by m-1 complex generators of a maximal isotropic
/// subbundle of the complexified orthogonal complement of E.
struct ContactPair {
  ModelPtr model;
  std::array<GenSection, 2> e;
  std::vector<GenSection> l;
};

/// Generalized almost contact triple (Phi, e1, e2). `phi` acts on
/// GenSection::as_column(), i.e. on [vector part; form part].
struct ContactTriple {
  ModelPtr model;
  Matrix phi;
  GenSection e1;
  GenSection e2;
};

/// Throws ValidationError naming the violated condition (and the sample point
/// for pointwise conditions).
void validate(const ContactPair& pair);
void validate(const ContactTriple& triple);

/// Gram matrix of the pairing on columns: <x, y> = x^T G y.
Matrix pairing_matrix(unsigned dim);
GenSection apply(const Matrix& phi, const GenSection& x);
Matrix conj(const Matrix& a);

/// x - 2<x,e2> e1 - 2<x,e1> e2, the projection onto the orthogonal
/// complement of a normalised frame.
GenSection project_off(const GenSection& x, const GenSection& e1, const GenSection& e2);

/// The O(1,1) freedom in normalising a frame of E: e1 -> scale e1,
/// e2 -> e2 / scale, optionally exchanging the two isotropic lines first.
struct FrameChoice {
  FunctionElement scale{1};
  bool swap = false;
};

/// Normalised isotropic frame (e1, e2) of span(e) with <e1,e2> = 1/2.
std::array<GenSection, 2> normalized_frame(const ContactPair& pair, const FrameChoice& choice = {});

ContactTriple triple_from_pair(const ContactPair& pair, const FrameChoice& choice = {});
ContactPair pair_from_triple(const ContactTriple& triple);

/// Phi = [[a, b], [c, d]] with a: TM -> TM, b: T*M -> TM, c: TM -> T*M,
/// d: T*M -> T*M.
struct PhiBlocks {
  Matrix a, b, c, d;
};
PhiBlocks phi_blocks(const Matrix& phi);
Matrix from_blocks(const PhiBlocks& blocks);

/// Matrix of x -> e^omega x = x + i_X omega on columns.
Matrix b_transform_matrix(const FrameModel& model, const DifferentialForm& omega);
ContactPair b_transform(const ContactPair& pair, const DifferentialForm& omega);
ContactTriple b_transform(const ContactTriple& triple, const DifferentialForm& omega);

struct PointType {
  std::string point;
  unsigned p_e = 0;  // rank of the vector parts of E
  unsigned t_l = 0;  // m - rank of the vector parts of L
};

/// Geometric type at every sample point. Throws std::logic_error when a
/// value leaves its admissible range.
std::vector<PointType> geometric_type(const ContactPair& pair);

/// Rank of the vector parts of the sections at a point.
std::size_t anchor_rank_at(const std::vector<GenSection>& sections, const Point& p);

/// Generic and pointwise span equality.
bool same_span(const FrameModel& model, const std::vector<GenSection>& a, const std::vector<GenSection>& b);

/// E = span(X, beta) with X a vector field and beta a 1-form.
struct PoonWadeWitness {
  GenSection vector;
  GenSection form;
};
std::optional<PoonWadeWitness> is_poon_wade(const ContactPair& pair);

enum class ReductionMode { General, Cosymplectic, Contact };

struct Reduction {
  DifferentialForm omega;
  ContactPair pair;
  ContactTriple triple;
};

/// B-transform bringing a pair with rank-one anchor on E to the form
/// E = span(X, beta). The Cosymplectic and Contact modes continue to a
/// cosymplectic or almost contact triple and require t_L = 1 and t_L = n + 1.
Reduction poon_wade_reduce(const ContactPair& pair, ReductionMode mode = ReductionMode::General);

/// theta and eta of a triple with Phi = [[0, *], [theta, 0]] on the
/// complement of E = span(xi, eta).
struct CosymplecticData {
  DifferentialForm eta;
  DifferentialForm theta;
  Column xi;
};
std::optional<CosymplecticData> as_cosymplectic(const ContactTriple& triple);

/// (phi, xi, eta) of a triple with Phi = diag(phi, -phi^*).
struct AlmostContactData {
  Matrix phi;
  Column xi;
  DifferentialForm eta;
};
std::optional<AlmostContactData> as_almost_contact(const ContactTriple& triple);

/// Triple of an almost contact structure (phi, xi, eta).
ContactTriple almost_contact_triple(const ModelPtr& model, const Matrix& phi, const Column& xi,
                                    const DifferentialForm& eta);

/// First subset of `candidates` of the given size that is independent
/// generically and at every sample point, or nullopt.
std::optional<std::vector<GenSection>> independent_subset(const FrameModel& model,
                                                          const std::vector<GenSection>& candidates,
                                                          std::size_t size);

}  // namespace gencontact
