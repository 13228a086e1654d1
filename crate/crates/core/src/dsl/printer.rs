use super::ast::StatusExpr;

const PREFIX_PRECEDENCE: u8 = 5;
const ATOM_PRECEDENCE: u8 = 6;

fn precedence(expr: &StatusExpr) -> u8 {
    match expr {
        StatusExpr::Binary(op, _, _) => op.precedence(),
        StatusExpr::Unary(..) => PREFIX_PRECEDENCE,
        StatusExpr::Literal(_) | StatusExpr::Ident(_) => ATOM_PRECEDENCE,
    }
}

/// Renders `expr` with the fewest parentheses the grammar allows.
pub fn pretty_print(expr: &StatusExpr) -> String {
    let mut out = String::new();
    write_expr(expr, &mut out);
    out
}

fn write_expr(expr: &StatusExpr, out: &mut String) {
    match expr {
        StatusExpr::Literal(s) => out.push(s.symbol()),
        StatusExpr::Ident(id) => out.push_str(&id.name),
        StatusExpr::Unary(op, operand) => {
            out.push_str(op.symbol());
            write_operand(operand, precedence(operand) < PREFIX_PRECEDENCE, out);
        }
        StatusExpr::Binary(op, left, right) => {
            let p = op.precedence();
            write_operand(left, precedence(left) < p, out);
            out.push(' ');
            out.push_str(op.symbol());
            out.push(' ');
            // left-associative: an equal-precedence right operand needs parentheses
            write_operand(right, precedence(right) <= p, out);
        }
    }
}

fn write_operand(expr: &StatusExpr, parenthesize: bool, out: &mut String) {
    if parenthesize {
        out.push('(');
        write_expr(expr, out);
        out.push(')');
    } else {
        write_expr(expr, out);
    }
}
