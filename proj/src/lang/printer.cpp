// Copyright 2026 The ifcmr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ifcmr/lang/printer.hpp"

#include <vector>

namespace ifcmr {
namespace {

int precedence(const Expr& e) {
  if (const auto* b = std::get_if<Expr::Binary>(&e.node)) {
    switch (b->op) {
      case BinaryOp::Or:
        return 1;
      case BinaryOp::And:
        return 2;
      case BinaryOp::Eq:
      case BinaryOp::Lt:
        return 3;
      case BinaryOp::Add:
      case BinaryOp::Monus:
        return 4;
    }
  }
  if (std::holds_alternative<Expr::Not>(e.node)) return 5;
  return 6;
}

std::string_view op_text(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add:
      return "+";
    case BinaryOp::Monus:
      return "-";
    case BinaryOp::Eq:
      return "==";
    case BinaryOp::Lt:
      return "<";
    case BinaryOp::And:
      return "&&";
    case BinaryOp::Or:
      return "||";
  }
  return "?";
}

std::string channel_text(const ChannelRef& ch) { return ch.is_param ? "c" : ch.name; }

void emit_expr(const Expr& e, std::string& out);

void emit_operand(const Expr& e, bool parens, std::string& out) {
  if (parens) out += '(';
  emit_expr(e, out);
  if (parens) out += ')';
}

void emit_expr(const Expr& e, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Literal>) {
          out += to_string(n.value);
        } else if constexpr (std::is_same_v<T, Expr::Variable>) {
          out += n.name;
        } else if constexpr (std::is_same_v<T, Expr::Not>) {
          out += '!';
          const bool atom_needs_parens = std::holds_alternative<Expr::HasPrivilege>(n.operand->node) ||
                                         std::holds_alternative<Expr::LevelIs>(n.operand->node);
          emit_operand(*n.operand, precedence(*n.operand) < 5 || atom_needs_parens, out);
        } else if constexpr (std::is_same_v<T, Expr::Binary>) {
          const int p = precedence(e);
          emit_operand(*n.lhs, precedence(*n.lhs) < p, out);
          out += ' ';
          out += op_text(n.op);
          out += ' ';
          emit_operand(*n.rhs, precedence(*n.rhs) <= p, out);
        } else if constexpr (std::is_same_v<T, Expr::ExecIndex>) {
          out += 'i';
        } else if constexpr (std::is_same_v<T, Expr::DefaultOf>) {
          out += n.channel.is_param ? "val_def" : "default(" + n.channel.name + ")";
        } else if constexpr (std::is_same_v<T, Expr::HasPrivilege>) {
          out += n.privilege == Privilege::Ask ? "a in " : "t in ";
          out += n.table == PrivilegeTable::Map ? "T_M[" : "T_R[";
          emit_expr(*n.exec, out);
          out += "][" + channel_text(n.channel) + "]";
        } else {
          out += "LVL[" + channel_text(n.channel) + "] == " + std::string(to_string(n.level));
        }
      },
      e.node);
}

class StmtPrinter {
 public:
  explicit StmtPrinter(bool inline_mode) : inline_(inline_mode) {}

  void list(const Stmt& s, int indent) {
    std::vector<const Stmt*> items;
    const Stmt* cur = &s;
    while (const auto* q = cur->as<Stmt::Seq>()) {
      items.push_back(q->first.get());
      cur = q->second.get();
    }
    items.push_back(cur);
    for (std::size_t k = 0; k < items.size(); ++k) {
      if (k > 0) {
        out_ += ';';
        newline(indent);
      }
      if (items[k]->as<Stmt::Seq>() != nullptr) {
        block(*items[k], indent);
      } else {
        single(*items[k], indent);
      }
    }
  }

  std::string take() { return std::move(out_); }

 private:
  void newline(int indent) {
    if (inline_) {
      out_ += ' ';
      return;
    }
    out_ += '\n';
    out_.append(static_cast<std::size_t>(indent) * 2, ' ');
  }

  void block(const Stmt& s, int indent) {
    out_ += '{';
    newline(indent + 1);
    list(s, indent + 1);
    newline(indent);
    out_ += '}';
  }

  void single(const Stmt& s, int indent) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Stmt::Skip>) {
            out_ += "skip";
          } else if constexpr (std::is_same_v<T, Stmt::Assign>) {
            out_ += n.var + " := ";
            emit_expr(*n.value, out_);
          } else if constexpr (std::is_same_v<T, Stmt::Seq>) {
            block(s, indent);
          } else if constexpr (std::is_same_v<T, Stmt::If>) {
            out_ += "if ";
            emit_expr(*n.cond, out_);
            out_ += " then ";
            block(*n.then_branch, indent);
            out_ += " else ";
            block(*n.else_branch, indent);
          } else if constexpr (std::is_same_v<T, Stmt::While>) {
            out_ += "while ";
            emit_expr(*n.cond, out_);
            out_ += " do ";
            block(*n.body, indent);
          } else if constexpr (std::is_same_v<T, Stmt::Input>) {
            out_ += "input " + n.var + " from " + channel_text(n.channel);
          } else if constexpr (std::is_same_v<T, Stmt::Output>) {
            out_ += "output ";
            emit_expr(*n.value, out_);
            out_ += " to " + channel_text(n.channel);
          } else if constexpr (std::is_same_v<T, Stmt::Map>) {
            out_ += "map(";
            emit_expr(*n.value, out_);
            out_ += ", " + channel_text(n.channel) + ", " + to_source(n.target) + ")";
          } else if constexpr (std::is_same_v<T, Stmt::Wake>) {
            out_ += "wake(" + to_source(n.target) + ")";
          } else if constexpr (std::is_same_v<T, Stmt::Clone>) {
            out_ += "clone(" + to_source(n.target) + ", " + n.map_template + ", " + n.reduce_template + ")";
          } else if constexpr (std::is_same_v<T, Stmt::Retrieve>) {
            out_ += "retrieve " + n.var + " from ";
            emit_expr(*n.exec, out_);
            out_ += " on " + channel_text(n.channel);
          } else {
            out_ += "clean(" + channel_text(n.channel) + ", " + to_source(n.target) + ")";
          }
        },
        s.node);
  }

  bool inline_;
  std::string out_;
};

}  // namespace

std::string to_source(const Expr& e) {
  std::string out;
  emit_expr(e, out);
  return out;
}

std::string to_source(const Predicate& p) {
  std::string out = p.negated ? "!" : "";
  switch (p.kind) {
    case Predicate::Kind::CanTell:
      return out + "canTell(" + channel_text(p.channel) + ")";
    case Predicate::Kind::IsReady:
      return out + "isReady(" + channel_text(p.channel) + ")";
    case Predicate::Kind::Identical:
      return out + "identical(" + to_source(*p.exec) + ")";
    case Predicate::Kind::WaitingInput:
      return out + "isWaitingInput";
    case Predicate::Kind::WaitingOutput:
      return out + "isWaitingOutput";
  }
  return out;
}

std::string to_source(const Stmt& s) {
  StmtPrinter p(false);
  p.list(s, 0);
  return p.take();
}

std::string to_source_inline(const Stmt& s) {
  StmtPrinter p(true);
  p.list(s, 0);
  return p.take();
}

}  // namespace ifcmr
