#include "impg/callnf.hpp"

#include <cassert>
#include <vector>

#include "impg/domcod.hpp"

namespace impg {

namespace {

using K = ArrowExpr::Kind;

ArrowPtr st(K k, std::vector<ObjPtr> objs) {
  return arr_structural(k, std::move(objs));
}

ArrowPtr seq(ArrowPtr a, ArrowPtr b) {
  return arr_binary(K::Seq, std::move(a), std::move(b));
}

ArrowPtr sum_arrows(ArrowPtr a, ArrowPtr b) {
  return arr_binary(K::Sum, std::move(a), std::move(b));
}

ArrowPtr prod_arrows(ArrowPtr a, ArrowPtr b) {
  return arr_binary(K::Prod, std::move(a), std::move(b));
}

ArrowPtr case_arrows(ArrowPtr a, ArrowPtr b) {
  return arr_binary(K::Case, std::move(a), std::move(b));
}

ArrowPtr twist_prod(const ObjPtr& a, const ObjPtr& b) {
  return arr_binary(K::Pair, st(K::Proj2, {a, b}), st(K::Proj1, {a, b}));
}

bool is_id(const ArrowPtr& a) { return a->kind == K::Id; }

// A sum shape over opaque component objects: leaves carry indices into a
// block list, so a block that is itself a sum is never split.
struct BlockTree;
using BTp = std::shared_ptr<const BlockTree>;
struct BlockTree {
  std::size_t idx = 0;  // leaves only
  BTp l, r;
  bool leaf() const { return !l; }
};

BTp bleaf(std::size_t i) {
  auto t = std::make_shared<BlockTree>();
  t->idx = i;
  return t;
}

BTp bbr(BTp l, BTp r) {
  auto t = std::make_shared<BlockTree>();
  t->l = std::move(l);
  t->r = std::move(r);
  return t;
}

ObjPtr bt_obj(const BTp& t, const std::vector<ObjPtr>& blocks) {
  if (t->leaf()) return blocks[t->idx];
  return obj_sum(bt_obj(t->l, blocks), bt_obj(t->r, blocks));
}

bool bt_contains(const BTp& t, std::size_t want) {
  if (t->leaf()) return t->idx == want;
  return bt_contains(t->l, want) || bt_contains(t->r, want);
}

// Canonical injection of block `want` into the target shape.
ArrowPtr inj_block(const BTp& tgt, const std::vector<ObjPtr>& blocks,
                   std::size_t want) {
  if (tgt->leaf()) {
    assert(tgt->idx == want);
    return st(K::Id, {blocks[want]});
  }
  ObjPtr lo = bt_obj(tgt->l, blocks), ro = bt_obj(tgt->r, blocks);
  if (bt_contains(tgt->l, want)) {
    ArrowPtr inner = inj_block(tgt->l, blocks, want);
    ArrowPtr inj = st(K::Inj1, {std::move(lo), std::move(ro)});
    return is_id(inner) ? inj : seq(std::move(inner), std::move(inj));
  }
  ArrowPtr inner = inj_block(tgt->r, blocks, want);
  ArrowPtr inj = st(K::Inj2, {std::move(lo), std::move(ro)});
  return is_id(inner) ? inj : seq(std::move(inner), std::move(inj));
}

// The canonical isomorphism between two sum shapes over the same blocks:
// case over the source, inject into the target. Blocks that are the initial
// object turn into initial maps.
ArrowPtr block_iso(const BTp& src, const BTp& tgt,
                   const std::vector<ObjPtr>& blocks) {
  if (!src->leaf())
    return case_arrows(block_iso(src->l, tgt, blocks),
                       block_iso(src->r, tgt, blocks));
  const ObjPtr& b = blocks[src->idx];
  if (b->kind == ObjExpr::Kind::Initial)
    return st(K::Bang, {bt_obj(tgt, blocks)});
  return inj_block(tgt, blocks, src->idx);
}

}  // namespace

ArrowPtr as_call(const CallForm& cf) {
  return arr_call(cf.body, {cf.input, cf.local, cf.output});
}

bool call_free(const ArrowPtr& f) {
  if (!f) return true;
  if (f->kind == K::Call) return false;
  return call_free(f->left) && call_free(f->right);
}

CallForm lift(const ArrowPtr& f, const ObjPtr& dom, const ObjPtr& cod) {
  if (!call_free(f)) throw CallNfError("lift expects a call-free arrow");
  ArrowPtr body = seq(case_arrows(f, st(K::Bang, {cod})),
                      st(K::Inj2, {obj_initial(), cod}));
  return {dom, obj_initial(), cod, std::move(body)};
}

CallForm seq_nf(const CallForm& a, const CallForm& b) {
  if (flatten(a.output) != flatten(b.input))
    throw CallNfError("seq_nf: output/input mismatch");
  // Blocks: 0=X, 1=U, 2=Y, 3=V, 4=Z.
  std::vector<ObjPtr> blk{a.input, a.local, a.output, b.local, b.output};
  BTp local_bt = bbr(bleaf(1), bbr(bleaf(2), bleaf(3)));
  ObjPtr local = bt_obj(local_bt, blk);
  // X+(U+(Y+V)) -> (X+U)+(Y+V): reassociation only.
  ArrowPtr r = block_iso(bbr(bleaf(0), local_bt),
                         bbr(bbr(bleaf(0), bleaf(1)), bbr(bleaf(2), bleaf(3))),
                         blk);
  // (U+Y)+(V+Z) -> (U+(Y+V))+Z: reassociation only.
  ArrowPtr s = block_iso(bbr(bbr(bleaf(1), bleaf(2)), bbr(bleaf(3), bleaf(4))),
                         bbr(local_bt, bleaf(4)), blk);
  ArrowPtr body =
      seq(seq(std::move(r), sum_arrows(a.body, b.body)), std::move(s));
  return {a.input, std::move(local), b.output, std::move(body)};
}

CallForm sum_nf(const CallForm& a, const CallForm& b) {
  // Blocks: 0=X, 1=X', 2=U, 3=U', 4=Y, 5=Y'.
  std::vector<ObjPtr> blk{a.input, b.input, a.local,
                          b.local, a.output, b.output};
  ObjPtr input = obj_sum(a.input, b.input);
  ObjPtr local = obj_sum(a.local, b.local);
  ObjPtr output = obj_sum(a.output, b.output);
  // (X+X')+(U+U') -> (X+U)+(X'+U'): swap the middle blocks.
  ArrowPtr pa = block_iso(bbr(bbr(bleaf(0), bleaf(1)), bbr(bleaf(2), bleaf(3))),
                          bbr(bbr(bleaf(0), bleaf(2)), bbr(bleaf(1), bleaf(3))),
                          blk);
  // (U+Y)+(U'+Y') -> (U+U')+(Y+Y').
  ArrowPtr pb = block_iso(bbr(bbr(bleaf(2), bleaf(4)), bbr(bleaf(3), bleaf(5))),
                          bbr(bbr(bleaf(2), bleaf(3)), bbr(bleaf(4), bleaf(5))),
                          blk);
  ArrowPtr body =
      seq(seq(std::move(pa), sum_arrows(a.body, b.body)), std::move(pb));
  return {std::move(input), std::move(local), std::move(output),
          std::move(body)};
}

CallForm prod_nf(const CallForm& a, const CallForm& b) {
  const ObjPtr &X = a.input, &U = a.local, &Y = a.output;
  const ObjPtr &X2 = b.input, &U2 = b.local, &Y2 = b.output;
  ObjPtr input = obj_prod(X, X2);
  ObjPtr UU = obj_prod(U, U2), UY = obj_prod(U, Y2), YU = obj_prod(Y, U2),
         YY = obj_prod(Y, Y2);
  ObjPtr local = obj_sum(UU, obj_sum(UY, YU));

  // Restrictions of the bodies to either summand of their domains.
  ArrowPtr fX = seq(st(K::Inj1, {X, U}), a.body);    // X  -> U+Y
  ArrowPtr fU = seq(st(K::Inj2, {X, U}), a.body);    // U  -> U+Y
  ArrowPtr gX = seq(st(K::Inj1, {X2, U2}), b.body);  // X' -> U'+Y'
  ArrowPtr gU = seq(st(K::Inj2, {X2, U2}), b.body);  // U' -> U'+Y'

  ObjPtr UYs = obj_sum(U, Y);

  // The four mid-flight combinations, each landing in (U+Y)*(U'+Y').
  ArrowPtr runXX = prod_arrows(fX, gX);
  ArrowPtr runUU = prod_arrows(fU, gU);
  ArrowPtr runUY = prod_arrows(fU, st(K::Inj2, {U2, Y2}));
  ArrowPtr runYU = prod_arrows(st(K::Inj2, {U, Y}), gU);
  ArrowPtr run = case_arrows(runXX,
                             case_arrows(runUU, case_arrows(runUY, runYU)));

  // Distribute (U+Y)*(U'+Y') into the four products.
  auto split = [&](const ObjPtr& right) {
    // (U+Y)*right -> U*right + Y*right
    ArrowPtr tw = twist_prod(UYs, right);
    ArrowPtr d = st(K::Dist, {right, U, Y});
    ArrowPtr untw = sum_arrows(twist_prod(right, U), twist_prod(right, Y));
    return seq(seq(std::move(tw), std::move(d)), std::move(untw));
  };
  ArrowPtr dist_right = st(K::Dist, {UYs, U2, Y2});
  ArrowPtr splits = sum_arrows(split(U2), split(Y2));
  // Blocks: 0=U*U', 1=Y*U', 2=U*Y', 3=Y*Y'; regroup into local+output.
  std::vector<ObjPtr> blk{UU, YU, UY, YY};
  ArrowPtr regroup = block_iso(bbr(bbr(bleaf(0), bleaf(1)), bbr(bleaf(2), bleaf(3))),
                               bbr(bbr(bleaf(0), bbr(bleaf(2), bleaf(1))), bleaf(3)),
                               blk);
  ArrowPtr dd = seq(seq(std::move(dist_right), std::move(splits)),
                    std::move(regroup));

  ArrowPtr body = seq(std::move(run), std::move(dd));
  return {std::move(input), std::move(local), YY, std::move(body)};
}

CallForm case_nf(const CallForm& a, const CallForm& b) {
  if (flatten(a.output) != flatten(b.output))
    throw CallNfError("case_nf: codomain mismatch");
  const ObjPtr& Z = a.output;
  ArrowPtr nabla = case_arrows(st(K::Id, {Z}), st(K::Id, {Z}));
  return seq_nf(sum_nf(a, b), lift(nabla, obj_sum(Z, Z), Z));
}

CallForm pair_nf(const CallForm& a, const CallForm& b) {
  if (flatten(a.input) != flatten(b.input))
    throw CallNfError("pair_nf: domain mismatch");
  const ObjPtr& X = a.input;
  ArrowPtr delta = arr_binary(K::Pair, st(K::Id, {X}), st(K::Id, {X}));
  return seq_nf(lift(delta, X, obj_prod(X, X)), prod_nf(a, b));
}

CallForm flatten_nf(const ObjPtr& input, const ObjPtr& outer_local,
                    const ObjPtr& output, const CallForm& inner) {
  const ObjPtr &X = input, &V = outer_local, &Y = output, &Ui = inner.local;
  if (flatten(inner.input) != flatten(obj_sum(X, V)) ||
      flatten(inner.output) != flatten(obj_sum(V, Y)))
    throw CallNfError("flatten_nf: nesting is not typed as required");
  // Blocks: 0=X, 1=V, 2=Ui, 3=Y.
  std::vector<ObjPtr> blk{X, V, Ui, Y};
  ObjPtr local = obj_sum(V, Ui);
  // X+(V+Ui) -> (X+V)+Ui: reassociation.
  ArrowPtr r = block_iso(bbr(bleaf(0), bbr(bleaf(1), bleaf(2))),
                         bbr(bbr(bleaf(0), bleaf(1)), bleaf(2)), blk);
  // Ui+(V+Y) -> (V+Ui)+Y: one twist of the two locals.
  ArrowPtr s = block_iso(bbr(bleaf(2), bbr(bleaf(1), bleaf(3))),
                         bbr(bbr(bleaf(1), bleaf(2)), bleaf(3)), blk);
  ArrowPtr body = seq(seq(std::move(r), inner.body), std::move(s));
  return {X, std::move(local), Y, std::move(body)};
}

CallForm normalize(const ArrowPtr& f, const ObjPtr& dom, const ObjPtr& cod,
                   const Signature& sig) {
  if (call_free(f)) return lift(f, dom, cod);
  switch (f->kind) {
    case K::Seq: {
      ObjPtr mid = cod_obj(f->left, sig);
      if (!mid) mid = dom_obj(f->right, sig);
      if (!mid) throw CallNfError("normalize: cannot type the composition");
      return seq_nf(normalize(f->left, dom, mid, sig),
                    normalize(f->right, mid, cod, sig));
    }
    case K::Sum: {
      if (dom->kind != ObjExpr::Kind::Sum || cod->kind != ObjExpr::Kind::Sum)
        throw CallNfError("normalize: sum at a non-sum type");
      return sum_nf(normalize(f->left, dom->left, cod->left, sig),
                    normalize(f->right, dom->right, cod->right, sig));
    }
    case K::Prod: {
      if (dom->kind != ObjExpr::Kind::Prod || cod->kind != ObjExpr::Kind::Prod)
        throw CallNfError("normalize: product at a non-product type");
      return prod_nf(normalize(f->left, dom->left, cod->left, sig),
                     normalize(f->right, dom->right, cod->right, sig));
    }
    case K::Case: {
      if (dom->kind != ObjExpr::Kind::Sum)
        throw CallNfError("normalize: case at a non-sum type");
      return case_nf(normalize(f->left, dom->left, cod, sig),
                     normalize(f->right, dom->right, cod, sig));
    }
    case K::Pair: {
      if (cod->kind != ObjExpr::Kind::Prod)
        throw CallNfError("normalize: pairing at a non-product type");
      return pair_nf(normalize(f->left, dom, cod->left, sig),
                     normalize(f->right, dom, cod->right, sig));
    }
    case K::Call: {
      if (!f->annotated())
        throw CallNfError("normalize: call without annotation");
      const ObjPtr &Xc = f->objs[0], &Uc = f->objs[1], &Yc = f->objs[2];
      if (flatten(Xc) != flatten(dom) || flatten(Yc) != flatten(cod))
        throw CallNfError("normalize: call annotation disagrees with type");
      // Thread the requested shapes through the body so the combined form's
      // glue lines up block by block.
      CallForm inner =
          normalize(f->left, obj_sum(dom, Uc), obj_sum(Uc, cod), sig);
      return flatten_nf(dom, Uc, cod, inner);
    }
    default:
      throw CallNfError("normalize: arrow cannot contain a call here");
  }
}

}  // namespace impg
