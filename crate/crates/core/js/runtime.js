// Reference runtime for emitted modules. Defines $s, $extends, $r, the
// term kinds, the worker and driver loop, the builtin modules and the
// embedding entry points exported from the "$rt" symbol.

var UNDEFINED = 0, NOT_READY = 1, PREPARING = 2, READY = 3;

function $s(name) {
  this.name = name;
  this.status = UNDEFINED;
  this.exports = {};
  this.nested = {};
  this.ctor = null;
  this.base = null;
  this.link = null;
  this.mlink = null;
}
$s.prototype.query = function(name) {
  var s = this.nested[name];
  if (s === undefined) {
    s = new $s(name);
    this.nested[name] = s;
  }
  return s;
};
$s.prototype.def = function(name, def) {
  var m = this.query(name);
  m.status = NOT_READY;
  def(m);
  return m;
};
$s.prototype.prepare = function() {
  if (this.status !== NOT_READY) return this;
  this.status = PREPARING;
  if (this.ctor !== null && this.base !== null) {
    this.base.prepare();
    $extends(this.ctor, this.base.ctor);
  }
  if (this.mlink !== null) this.mlink(this.ctor);
  if (this.link !== null) this.link();
  this.status = READY;
  for (var k in this.nested) this.nested[k].prepare();
  return this;
};

function $extends(c, base) {
  for (var p in base) if (Object.prototype.hasOwnProperty.call(base, p)) c[p] = base[p];
  function T() { this.constructor = c; }
  T.prototype = base.prototype;
  c.prototype = new T();
}

var $r = new $s("");

(function() {
  function PrologError(msg) { this.message = msg; this.name = "PrologError"; }
  PrologError.prototype = Object.create(Error.prototype);
  function err(msg) { throw new PrologError(msg); }

  // Sentinels the driver recognizes before invoking a continuation.
  function FAIL() { return FAIL; }
  function DONE() { return DONE; }
  function HALT() { return HALT; }

  var term_base, var_base, nonvar_base, t_var, t_attrvar, t_struct, t_gstruct, t_num, t_string, t_foreign, t_level;

  $r.def("term_base", function(m) {
    m.ctor = function term_base() {};
  });
  $r.def("var_base", function(m) {
    m.ctor = function var_base() {};
    m.base = $r.query("term_base");
    m.mlink = function(c) {
      c.prototype.deref = function() {
        var t = this;
        while (t.ref !== t) {
          t = t.ref;
          if (t.ref === undefined) return t;
        }
        return t;
      };
      c.prototype.is_unbound = function() { return this.ref === this; };
      c.prototype.unbind = function() { this.ref = this; };
      // Receiver is a var, other a nonvar.
      c.prototype.unify_nonvar = function(w, nv) { w.bind(this, nv); return true; };
    };
  });
  $r.def("nonvar_base", function(m) {
    m.ctor = function nonvar_base() {};
    m.base = $r.query("term_base");
    m.mlink = function(c) {
      c.prototype.unify = function(w, a0) { return a0.unify_nonvar(w, this); };
      c.prototype.deref = function() { return this; };
    };
  });
  $r.def("t_var", function(m) {
    m.ctor = function t_var(w) { this.ref = this; this.timestamp = w.time++; };
    m.base = $r.query("var_base");
    m.mlink = function(c) {
      c.prototype.unify = function(w, a0) {
        if (a0 instanceof var_base) {
          if (a0 instanceof t_attrvar) { w.bind(this, a0); return true; }
          if (this.timestamp > a0.timestamp) w.bind(this, a0);
          else w.bind(a0, this);
          return true;
        }
        w.bind(this, a0);
        return true;
      };
    };
  });
  $r.def("t_attrvar", function(m) {
    m.ctor = function t_attrvar(w, attrs) { this.ref = this; this.timestamp = w.time++; this.attrs = attrs; };
    m.base = $r.query("var_base");
    m.mlink = function(c) {
      c.prototype.unify = function(w, a0) {
        if (a0 instanceof t_var) { w.bind(a0, this); return true; }
        if (a0 instanceof t_attrvar && this.timestamp < a0.timestamp) return a0.unify(w, this);
        w.bind(this, a0);
        w.wake.push({ attrs: this.attrs, other: a0 });
        return true;
      };
      c.prototype.unify_nonvar = function(w, nv) { return this.unify(w, nv); };
    };
  });
  $r.def("t_struct", function(m) {
    m.ctor = function t_struct() {};
    m.base = $r.query("nonvar_base");
    m.mlink = function(c) {
      c.prototype.unify_nonvar = function(w, nv) {
        var x = this;
        for (;;) {
          if (!(nv instanceof t_struct) || nv.name !== x.name || nv.arity !== x.arity) return false;
          var n = x.arity;
          if (n === 0) return true;
          for (var i = 0; i < n - 1; i++) if (!unify(w, x["a" + i], nv["a" + i])) return false;
          var a = x["a" + (n - 1)].deref(), b = nv["a" + (n - 1)].deref();
          if (a === b) return true;
          if (a instanceof var_base || b instanceof var_base) return a.unify(w, b);
          if (!(a instanceof t_struct)) return a.unify_nonvar(w, b);
          x = a;
          nv = b;
        }
      };
    };
  });
  $r.def("t_gstruct", function(m) {
    m.ctor = function t_gstruct(name, args) {
      this.name = name;
      this.arity = args.length;
      for (var i = 0; i < args.length; i++) this["a" + i] = args[i];
    };
    m.base = $r.query("t_struct");
  });
  $r.def("t_num", function(m) {
    m.ctor = function t_num(v) { this.v = v; };
    m.base = $r.query("nonvar_base");
    m.mlink = function(c) {
      c.prototype.unbox = function() { return this.v; };
      c.prototype.unify_nonvar = function(w, nv) { return nv instanceof t_num && nv.v === this.v; };
    };
  });
  $r.def("t_string", function(m) {
    m.ctor = function t_string(s) { this.s = s; };
    m.base = $r.query("nonvar_base");
    m.mlink = function(c) {
      c.prototype.unbox = function() { return this.s; };
      c.prototype.unify_nonvar = function(w, nv) { return nv instanceof t_string && nv.s === this.s; };
    };
  });
  $r.def("t_foreign", function(m) {
    m.ctor = function t_foreign() {};
    m.base = $r.query("nonvar_base");
    m.mlink = function(c) {
      c.prototype.unify_nonvar = function(w, nv) {
        return nv instanceof t_foreign && nv.constructor === this.constructor && nv.a0 === this.a0;
      };
    };
  });
  $r.def("t_level", function(m) {
    m.ctor = function t_level(cp) { this.cp = cp; };
    m.base = $r.query("nonvar_base");
    m.mlink = function(c) {
      c.prototype.unify_nonvar = function(w, nv) { return nv instanceof t_level && nv.cp === this.cp; };
    };
  });

  function ctor_of(n) { return $r.query(n).prepare().ctor; }
  term_base = ctor_of("term_base");
  var_base = ctor_of("var_base");
  nonvar_base = ctor_of("nonvar_base");
  t_var = ctor_of("t_var");
  t_attrvar = ctor_of("t_attrvar");
  t_struct = ctor_of("t_struct");
  t_gstruct = ctor_of("t_gstruct");
  t_num = ctor_of("t_num");
  t_string = ctor_of("t_string");
  t_foreign = ctor_of("t_foreign");
  t_level = ctor_of("t_level");

  function mk(name, args) { return new t_gstruct(name, args); }
  function atom(name) { return new t_gstruct(name, []); }
  function args_of(t) {
    var out = [];
    for (var i = 0; i < t.arity; i++) out.push(t["a" + i]);
    return out;
  }
  function is_atom(t) { return t instanceof t_struct && t.arity === 0; }
  function is_var(t) { return t instanceof var_base; }

  function unify(w, a, b) {
    a = a.deref();
    b = b.deref();
    if (a === b) return true;
    return a.unify(w, b);
  }

  // Worker.

  function Worker(out) {
    this.goal = null;
    this.cont = null;
    this.choice = null;
    this.frame = null;
    this.undo = [];
    this.time = 0;
    this.wake = [];
    this.ctx = null;
    this.out = out || function(s) { process.stdout.write(s); };
  }
  Worker.prototype.bind = function(v, t) {
    v.ref = t;
    this.undo.push(v);
  };
  Worker.prototype.untrail = function(mark) {
    var u = this.undo;
    while (u.length > mark) u.pop().unbind();
  };
  Worker.prototype.push_frame = function(n, b) {
    var f = { y: new Array(n), prev: this.frame, cont: this.cont, choice: b };
    this.frame = f;
    return f.y;
  };
  Worker.prototype.pop_frame = function() {
    var f = this.frame;
    this.cont = f.cont;
    this.frame = f.prev;
  };
  Worker.prototype.push_choice = function(cs, i) {
    this.choice = {
      prev: this.choice, cs: cs, i: i, retry: null,
      goal: this.goal, cont: this.cont, frame: this.frame,
      mark: this.undo.length, time: this.time, ctx: this.ctx
    };
  };
  // Choicepoint whose alternatives come from retry(w, cp).
  Worker.prototype.push_retry = function(retry) {
    this.push_choice(null, 0);
    this.choice.retry = retry;
  };
  Worker.prototype.cut = function(b) { this.choice = b; };

  function backtrack(w, base) {
    var cp = w.choice;
    if (cp === base) return null;
    w.untrail(cp.mark);
    w.time = cp.time;
    w.goal = cp.goal;
    w.cont = cp.cont;
    w.frame = cp.frame;
    w.ctx = cp.ctx;
    w.wake = [];
    if (cp.retry !== null) return cp.retry(w, cp);
    var f = cp.cs[cp.i];
    cp.i++;
    if (cp.i >= cp.cs.length) w.choice = cp.prev;
    return f(w, cp.prev);
  }

  // Runs attr_unify_hook for pending wakeups, then resumes k.
  function wake(w, k) {
    var list = w.wake;
    w.wake = [];
    var goal = null;
    for (var i = list.length - 1; i >= 0; i--) {
      var attrs = list[i].attrs;
      var mods = Object.keys(attrs);
      for (var j = mods.length - 1; j >= 0; j--) {
        var g = mk(":", [atom(mods[j]), mk("attr_unify_hook", [attrs[mods[j]], list[i].other])]);
        goal = goal === null ? g : mk(",", [g, goal]);
      }
    }
    if (goal === null) return k;
    var saved = w.goal, c = w.cont;
    return meta(w, goal, "user", w.choice, function(w) {
      w.goal = saved;
      w.cont = c;
      return k;
    });
  }

  function run(w, k, base) {
    for (;;) {
      if (k === FAIL) {
        k = backtrack(w, base);
        if (k === null) return FAIL;
        continue;
      }
      if (w.wake.length > 0) {
        k = wake(w, k);
        continue;
      }
      if (k === DONE || k === HALT) return k;
      k = k(w);
    }
  }

  // Meta calls.

  function lookup(mod, key) {
    var m = $r.nested[mod];
    var s;
    if (m !== undefined) {
      m.prepare();
      s = m.nested[key];
      if (s !== undefined && s.status !== UNDEFINED && s.ctor !== null && s.ctor.prototype.execute) return s.ctor;
      var ims = m.imports || [];
      for (var i = 0; i < ims.length; i++) {
        var im = $r.query(ims[i]).prepare();
        if (im.exports[key] !== undefined) return im.exports[key];
      }
    }
    for (var b = 0; b < BUILTIN_MODULES.length; b++) {
      var bm = $r.query(BUILTIN_MODULES[b]);
      if (bm.exports[key] !== undefined) return bm.exports[key];
    }
    var u = $r.nested["user"];
    if (u !== undefined) {
      u.prepare();
      s = u.nested[key];
      if (s !== undefined && s.ctor !== null && s.ctor.prototype.execute) return s.ctor;
    }
    if (m === undefined && mod !== "user" && !is_builtin_module(mod)) err("existence error: unknown module " + mod);
    return null;
  }

  function instantiate(ctor, args) {
    var t = Object.create(ctor.prototype);
    for (var i = 0; i < args.length; i++) t["a" + i] = args[i];
    return t;
  }

  function add_args(t, extra) {
    t = t.deref();
    if (is_var(t)) err("instantiation error: unbound goal");
    if (!(t instanceof t_struct)) err("type error: callable expected, found " + format(t, true));
    if (extra.length === 0) return t;
    if (t.name === ":" && t.arity === 2) return mk(":", [t.a0, add_args(t.a1, extra)]);
    return mk(t.name, args_of(t).concat(extra));
  }

  function meta(w, t, mod, cut, k) {
    t = t.deref();
    if (is_var(t)) err("instantiation error: unbound goal");
    if (!(t instanceof t_struct)) err("type error: callable expected, found " + format(t, true));
    var key = t.name + "/" + t.arity;
    switch (key) {
    case "true/0":
      return k;
    case ",/2":
      return meta(w, t.a0, mod, cut, function(w) { return meta(w, t.a1, mod, cut, k); });
    case "!/0":
      w.cut(cut);
      return k;
    case ";/2":
      var lhs = t.a0.deref();
      if (lhs instanceof t_struct && lhs.name === "->" && lhs.arity === 2) return ite(w, lhs.a0, lhs.a1, t.a1, mod, cut, k);
      w.push_choice([null, function(w) { return meta(w, t.a1, mod, cut, k); }], 1);
      return meta(w, t.a0, mod, cut, k);
    case "->/2":
      return ite(w, t.a0, t.a1, atom("fail"), mod, cut, k);
    case "\\+/1":
      return ite(w, t.a0, atom("fail"), atom("true"), mod, cut, k);
    case ":/2":
      var mm = t.a0.deref();
      if (!is_atom(mm)) err("type error: module name expected");
      return meta(w, t.a1, mm.name, cut, k);
    }
    if (t.name === "call" && t.arity >= 1) {
      var args = args_of(t);
      return meta(w, add_args(args[0], args.slice(1)), mod, w.choice, k);
    }
    var ctor = lookup(mod, key);
    // Unknown predicates fail, like the stubs compiled for them.
    if (ctor === null) return FAIL;
    w.goal = instantiate(ctor, args_of(t));
    w.cont = k;
    w.ctx = mod;
    return ctor.prototype.execute;
  }

  function ite(w, c, t, e, mod, cut, k) {
    var h = w.choice;
    w.push_choice([null, function(w) { return meta(w, e, mod, cut, k); }], 1);
    return meta(w, c, mod, w.choice, function(w) {
      w.cut(h);
      return meta(w, t, mod, cut, k);
    });
  }

  // Arithmetic.

  function to_i32(x) { return x | 0; }
  function need_int(op, x) {
    if (x % 1 !== 0 || !isFinite(x)) err("type error: integer expected in `" + op + "`");
  }
  var UNARY = {
    "-": function(x) { return -x; },
    "+": function(x) { return x; },
    "abs": Math.abs,
    "sign": function(x) { return x > 0 ? 1 : x < 0 ? -1 : 0; },
    "sqrt": Math.sqrt, "sin": Math.sin, "cos": Math.cos, "tan": Math.tan, "atan": Math.atan,
    "exp": Math.exp, "log": Math.log,
    "float": function(x) { return x; },
    "integer": function(x) { return round(x); },
    "round": function(x) { return round(x); },
    "truncate": Math.trunc, "float_integer_part": Math.trunc,
    "float_fractional_part": function(x) { return x - Math.trunc(x); },
    "ceiling": Math.ceil, "floor": Math.floor,
    "\\": function(x) { return ~to_i32(x); },
    "msb": function(x) { need_int("msb", x); return Math.max(Math.floor(Math.log2(x)), 0); }
  };
  function round(x) { return x < 0 ? -Math.round(-x) : Math.round(x); }
  function zero(y) { if (y === 0) err("evaluation error: zero_divisor"); }
  var BINARY = {
    "+": function(x, y) { return x + y; },
    "-": function(x, y) { return x - y; },
    "*": function(x, y) { return x * y; },
    "/": function(x, y) { zero(y); return x / y; },
    "//": function(x, y) { need_int("//", x); need_int("//", y); zero(y); return Math.trunc(x / y); },
    "mod": function(x, y) {
      need_int("mod", x); need_int("mod", y); zero(y);
      var r = x % y;
      return r !== 0 && (r < 0) !== (y < 0) ? r + y : r;
    },
    "rem": function(x, y) { need_int("rem", x); need_int("rem", y); zero(y); return x % y; },
    "min": function(x, y) { return y < x ? y : x; },
    "max": function(x, y) { return y > x ? y : x; },
    "**": Math.pow, "^": Math.pow,
    "atan2": Math.atan2, "atan": Math.atan2,
    ">>": function(x, y) { return to_i32(x) >> (to_i32(y) & 31); },
    "<<": function(x, y) { return to_i32(x) << (to_i32(y) & 31); },
    "/\\": function(x, y) { return to_i32(x) & to_i32(y); },
    "\\/": function(x, y) { return to_i32(x) | to_i32(y); },
    "xor": function(x, y) { return to_i32(x) ^ to_i32(y); },
    "gcd": function(x, y) {
      need_int("gcd", x); need_int("gcd", y);
      var a = Math.abs(x), b = Math.abs(y);
      while (b !== 0) { var t = a % b; a = b; b = t; }
      return a;
    }
  };
  var CONSTANTS = { pi: Math.PI, e: Math.E, inf: Infinity, infinite: Infinity, nan: NaN, max_tagged_integer: 9007199254740991 };

  function evaluate(t) {
    t = t.deref();
    if (t instanceof t_num) return t.v;
    if (is_var(t)) err("instantiation error in arithmetic");
    if (t instanceof t_string) {
      var cs = Array.from(t.s);
      if (cs.length === 1) return cs[0].codePointAt(0);
      err("type error: evaluable string");
    }
    if (t instanceof t_struct) {
      if (t.arity === 0) {
        if (Object.prototype.hasOwnProperty.call(CONSTANTS, t.name)) return CONSTANTS[t.name];
      } else if (t.arity === 1 && Object.prototype.hasOwnProperty.call(UNARY, t.name)) {
        return UNARY[t.name](evaluate(t.a0));
      } else if (t.arity === 2 && Object.prototype.hasOwnProperty.call(BINARY, t.name)) {
        var x = evaluate(t.a0);
        return BINARY[t.name](x, evaluate(t.a1));
      }
      if (t.arity === 1 && (t.name === "min" || t.name === "max")) evaluate(t.a0);
      err("type error: evaluable `" + t.name + "/" + t.arity + "`");
    }
    err("type error: evaluable");
  }

  // Standard order: Var < Number < String < Atom < Compound.
  function rank(t) {
    if (is_var(t)) return 0;
    if (t instanceof t_num) return 1;
    if (t instanceof t_string) return 2;
    if (is_atom(t)) return 3;
    return 4;
  }
  function cmp(a, b) { return a < b ? -1 : a > b ? 1 : 0; }
  function compare(a, b) {
    a = a.deref();
    b = b.deref();
    if (a === b) return 0;
    var ra = rank(a), rb = rank(b);
    if (ra !== rb) return cmp(ra, rb);
    switch (ra) {
    case 0: return cmp(a.timestamp, b.timestamp);
    case 1: return cmp(a.v, b.v);
    case 2: return cmp(a.s, b.s);
    case 3: return cmp(a.name, b.name);
    }
    var c = cmp(a.arity, b.arity) || cmp(a.name, b.name);
    if (c !== 0) return c;
    for (var i = 0; i < a.arity; i++) {
      c = compare(a["a" + i], b["a" + i]);
      if (c !== 0) return c;
    }
    return 0;
  }

  // Writer.

  var OPS = { prefix: {}, infix: {} };
  function op(p, type, names) {
    for (var i = 0; i < names.length; i++) {
      var table = type.length === 2 ? OPS.prefix : OPS.infix;
      table[names[i]] = { p: p, type: type };
    }
  }
  op(1200, "xfx", [":-", "-->"]);
  op(1200, "fx", [":-", "?-"]);
  op(1150, "fx", ["dynamic", "discontiguous", "initialization", "multifile"]);
  op(1100, "xfy", [";", "|"]);
  op(1050, "xfy", ["->"]);
  op(1000, "xfy", [","]);
  op(900, "fy", ["\\+"]);
  op(700, "xfx", ["=", "\\=", "==", "\\==", "@<", "@>", "@=<", "@>=", "=..", "is", "=:=", "=\\=", "<", ">", "=<", ">="]);
  op(500, "yfx", ["+", "-", "/\\", "\\/"]);
  op(400, "yfx", ["*", "/", "//", "mod", "rem", "<<", ">>"]);
  op(200, "xfx", ["**"]);
  op(200, "xfy", ["^", ":"]);
  op(200, "fy", ["-", "+", "\\"]);
  function has(o, k) { return Object.prototype.hasOwnProperty.call(o, k); }
  function arg_max(d) {
    var p = d.p;
    switch (d.type) {
    case "xfx": return [p - 1, p - 1];
    case "xfy": return [p - 1, p];
    case "yfx": return [p, p - 1];
    case "fy": return [0, p];
    default: return [0, p - 1];
    }
  }
  var SYMBOL = "+-*/\\^<>=~:.?@#&$";
  function is_symbol_char(c) { return SYMBOL.indexOf(c) >= 0; }
  function is_alnum(c) { return /^[\p{L}\p{N}]$/u.test(c); }
  function is_lower(c) { return c.toLowerCase() === c && c.toUpperCase() !== c; }
  function needs_quotes(name) {
    if (name === "[]" || name === "{}" || name === "!" || name === ";") return false;
    var cs = Array.from(name);
    if (cs.length === 0) return true;
    if (is_lower(cs[0])) return !cs.every(function(c) { return is_alnum(c) || c === "_"; });
    if (is_symbol_char(cs[0])) return name === "." || name.indexOf("/*") === 0 || !cs.every(is_symbol_char);
    return true;
  }
  function escape(text, q) {
    var out = "";
    Array.from(text).forEach(function(c) {
      if (c === "\\") out += "\\\\";
      else if (c === "\n") out += "\\n";
      else if (c === "\t") out += "\\t";
      else if (c === q) out += "\\" + c;
      else if (/^[\u0000-\u001f\u007f-\u009f]$/.test(c)) out += "\\x" + c.codePointAt(0).toString(16) + "\\";
      else out += c;
    });
    return out;
  }
  function quote_atom(name) { return needs_quotes(name) ? "'" + escape(name, "'") + "'" : name; }
  function is_op(name) { return has(OPS.prefix, name) || has(OPS.infix, name); }
  function is_alpha_op(name) { return /^\p{L}/u.test(name); }

  function format(t, quoted, var_name) {
    var out = "";
    var_name = var_name || function(v) { return "_G" + v.timestamp; };
    function last() { return out.length ? Array.from(out.slice(-2)).pop() : ""; }
    function push(s) {
      var l = last(), f = s.length ? Array.from(s)[0] : "";
      if (l && f && ((is_symbol_char(l) && is_symbol_char(f)) || (is_alnum(l) && is_alnum(f)))) out += " ";
      out += s;
    }
    function write_atom(a) { push(quoted ? quote_atom(a) : a); }
    function write(t, max) {
      t = t.deref();
      if (is_var(t)) { push(var_name(t)); return; }
      if (t instanceof t_num) { push(String(t.v)); return; }
      if (t instanceof t_string) { push(quoted ? '"' + escape(t.s, '"') + '"' : t.s); return; }
      if (t instanceof t_foreign) { push("<" + t.name + ">"); return; }
      if (!(t instanceof t_struct)) { push("<" + String(t) + ">"); return; }
      if (t.arity === 0) {
        var a = t.name;
        var prio = 0;
        if (has(OPS.prefix, a)) prio = Math.max(prio, OPS.prefix[a].p);
        if (has(OPS.infix, a)) prio = Math.max(prio, OPS.infix[a].p);
        if (is_op(a) && max < 1200 && prio > max) {
          push("(");
          write_atom(a);
          out += ")";
        } else write_atom(a);
        return;
      }
      compound(t, max);
    }
    function compound(t, max) {
      var name = t.name, d, am, paren;
      if (name === "." && t.arity === 2) {
        push("[");
        write(t.a0, 999);
        var tail = t.a1.deref();
        for (;;) {
          if (tail instanceof t_struct && tail.name === "." && tail.arity === 2) {
            out += ",";
            write(tail.a0, 999);
            tail = tail.a1.deref();
          } else if (tail instanceof t_struct && tail.name === "[]" && tail.arity === 0) {
            break;
          } else {
            out += "|";
            write(tail, 999);
            break;
          }
        }
        out += "]";
        return;
      }
      if (name === "{}" && t.arity === 1) {
        push("{");
        write(t.a0, 1200);
        out += "}";
        return;
      }
      if (t.arity === 2 && has(OPS.infix, name)) {
        d = OPS.infix[name];
        am = arg_max(d);
        paren = d.p > max;
        if (paren) push("(");
        write(t.a0, am[0]);
        if (name === ",") out += ",";
        else if (is_alpha_op(name)) { out += " "; write_atom(name); out += " "; }
        else write_atom(name);
        write(t.a1, am[1]);
        if (paren) out += ")";
        return;
      }
      if (t.arity === 1 && has(OPS.prefix, name)) {
        d = OPS.prefix[name];
        am = arg_max(d);
        paren = d.p > max;
        if (paren) push("(");
        write_atom(name);
        var arg = t.a0.deref();
        var arg_is_num = arg instanceof t_num;
        var arg_is_op_atom = is_atom(arg) && is_op(arg.name);
        if (is_alpha_op(name) || ((name === "-" || name === "+") && arg_is_num) || arg_is_op_atom) out += " ";
        write(arg, am[1]);
        if (paren) out += ")";
        return;
      }
      write_atom(name);
      out += "(";
      for (var i = 0; i < t.arity; i++) {
        if (i > 0) out += ",";
        write(t["a" + i], 999);
      }
      out += ")";
    }
    write(t, 1200);
    return out;
  }

  // `X = v, Y = w` with unbound variables named _A, _B, ... in order.
  function answer(names, vals) {
    var seen = [];
    var parts = [];
    function namer(v) {
      var k = seen.indexOf(v);
      if (k < 0) { seen.push(v); k = seen.length - 1; }
      var s = "_" + String.fromCharCode(65 + (k % 26));
      if (k >= 26) s += Math.floor(k / 26);
      return s;
    }
    for (var i = 0; i < names.length; i++) parts.push(names[i] + " = " + format(vals[i], true, namer));
    return parts.join(", ");
  }

  // Index keys; null for an unbound variable, "" for a nonvar without one.
  function key(t) {
    if (is_var(t)) return null;
    if (t instanceof t_struct) return t.name + "/" + t.arity;
    if (t instanceof t_num) return t.v % 1 === 0 && Math.abs(t.v) <= 9007199254740992 ? "#" + String(t.v) : "";
    if (t instanceof t_string) return '"' + t.s + '"';
    return "";
  }

  // Builtin modules.

  var BUILTIN_MODULES = ["term_basic", "arithmetic", "io", "attr"];
  function is_builtin_module(n) { return BUILTIN_MODULES.indexOf(n) >= 0; }

  function list_items(t) {
    var out = [];
    t = t.deref();
    while (t instanceof t_struct && t.name === "." && t.arity === 2) {
      out.push(t.a0);
      t = t.a1.deref();
    }
    if (is_atom(t) && t.name === "[]") return out;
    return null;
  }
  function mklist(items, tail) {
    var l = tail || atom("[]");
    for (var i = items.length - 1; i >= 0; i--) l = mk(".", [items[i], l]);
    return l;
  }
  // Unification that leaves no bindings when it fails.
  function unify_or_undo(w, a, b) {
    var mark = w.undo.length;
    if (unify(w, a, b)) return true;
    w.untrail(mark);
    return false;
  }
  function int_of(t) {
    t = t.deref();
    if (is_var(t)) return null;
    if (t instanceof t_num && t.v % 1 === 0) return t.v;
    err("type error: integer expected, found " + format(t, true));
  }
  function copy(w, t, map) {
    t = t.deref();
    if (is_var(t)) {
      for (var i = 0; i < map.length; i++) if (map[i][0] === t) return map[i][1];
      var v = new t_var(w);
      map.push([t, v]);
      return v;
    }
    if (t instanceof t_struct && t.arity > 0) {
      return mk(t.name, args_of(t).map(function(a) { return copy(w, a, map); }));
    }
    return t;
  }
  function num_cmp(a, b) {
    var x = evaluate(a), y = evaluate(b);
    return x < y ? -1 : x > y ? 1 : 0;
  }

  function defmodule(mod, preds) {
    $r.def(mod, function(m) {
      Object.keys(preds).forEach(function(k) {
        var fn = preds[k];
        var arity = +k.slice(k.lastIndexOf("/") + 1);
        var name = k.slice(0, k.lastIndexOf("/"));
        var ctor = function() {
          for (var i = 0; i < arguments.length; i++) this["a" + i] = arguments[i];
        };
        var exec = function(w) {
          var g = w.goal, args = [w];
          for (var i = 0; i < arity; i++) args.push(g["a" + i]);
          var r = fn.apply(null, args);
          if (r === true) return w.cont;
          if (r === false) return FAIL;
          return r;
        };
        m.def(k, function(s) {
          s.ctor = ctor;
          s.base = $r.query("t_struct");
          s.mlink = function(c) {
            c.prototype.name = name;
            c.prototype.arity = arity;
            c.prototype.execute = exec;
          };
        });
        m.exports[k] = ctor;
      });
    });
  }

  var TERM_BASIC = {
    "=/2": unify_or_undo,
    "\\=/2": function(w, a, b) {
      var mark = w.undo.length;
      var ok = unify(w, a, b);
      w.untrail(mark);
      return !ok;
    },
    "==/2": function(w, a, b) { return compare(a, b) === 0; },
    "\\==/2": function(w, a, b) { return compare(a, b) !== 0; },
    "@</2": function(w, a, b) { return compare(a, b) < 0; },
    "@>/2": function(w, a, b) { return compare(a, b) > 0; },
    "@=</2": function(w, a, b) { return compare(a, b) <= 0; },
    "@>=/2": function(w, a, b) { return compare(a, b) >= 0; },
    "compare/3": function(w, o, a, b) {
      var c = compare(a, b);
      return unify_or_undo(w, o, atom(c < 0 ? "<" : c > 0 ? ">" : "="));
    },
    "var/1": function(w, a) { return is_var(a.deref()); },
    "nonvar/1": function(w, a) { return !is_var(a.deref()); },
    "atom/1": function(w, a) { return is_atom(a.deref()); },
    "number/1": function(w, a) { return a.deref() instanceof t_num; },
    "integer/1": function(w, a) { a = a.deref(); return a instanceof t_num && a.v % 1 === 0; },
    "float/1": function(w, a) { a = a.deref(); return a instanceof t_num && a.v % 1 !== 0; },
    "atomic/1": function(w, a) { a = a.deref(); return is_atom(a) || a instanceof t_num || a instanceof t_string; },
    "compound/1": function(w, a) { a = a.deref(); return a instanceof t_struct && a.arity > 0; },
    "callable/1": function(w, a) { return a.deref() instanceof t_struct; },
    "is_list/1": function(w, a) { return list_items(a) !== null; },
    "string/1": function(w, a) { return a.deref() instanceof t_string; },
    "functor/3": function(w, t, n, a) {
      t = t.deref();
      if (is_var(t)) {
        var ar = int_of(a);
        var nm = n.deref();
        if (ar === null || is_var(nm)) err("instantiation error in functor/3");
        if (ar === 0) return unify_or_undo(w, t, nm);
        if (!is_atom(nm)) err("type error: atomic expected in functor/3");
        var args = [];
        for (var i = 0; i < ar; i++) args.push(new t_var(w));
        return unify_or_undo(w, t, mk(nm.name, args));
      }
      if (t instanceof t_struct) {
        return unify_or_undo(w, mk(".", [n, a]), mk(".", [atom(t.name), new t_num(t.arity)]));
      }
      return unify_or_undo(w, mk(".", [n, a]), mk(".", [t, new t_num(0)]));
    },
    "arg/3": function(w, n, t, a) {
      var i = int_of(n);
      if (i === null) err("instantiation error in arg/3");
      t = t.deref();
      if (!(t instanceof t_struct) || t.arity === 0) err("type error: compound expected, found " + format(t, true));
      if (i < 1 || i > t.arity) return false;
      return unify_or_undo(w, a, t["a" + (i - 1)]);
    },
    "=../2": function(w, t, l) {
      t = t.deref();
      if (is_var(t)) {
        var items = list_items(l);
        if (items === null || items.length === 0) err("instantiation error in =../2");
        var h = items[0].deref();
        if (items.length === 1) return unify_or_undo(w, t, h);
        if (!is_atom(h)) err("type error: atom expected in =../2");
        return unify_or_undo(w, t, mk(h.name, items.slice(1)));
      }
      if (t instanceof t_struct) return unify_or_undo(w, l, mklist([atom(t.name)].concat(args_of(t))));
      return unify_or_undo(w, l, mklist([t]));
    },
    "copy_term/2": function(w, a, b) { return unify_or_undo(w, b, copy(w, a, [])); },
    "true/0": function() { return true; },
    "fail/0": function() { return false; },
    "false/0": function() { return false; },
    "halt/0": function() { return HALT; }
  };
  for (var n = 1; n <= 8; n++) {
    TERM_BASIC["call/" + n] = (function(n) {
      return function(w) {
        var goal = add_args(arguments[1], Array.prototype.slice.call(arguments, 2));
        var mod = w.ctx || "user";
        if (typeof mod !== "string") mod = mod.name;
        return meta(w, goal, mod, w.choice, w.cont);
      };
    })(n);
  }
  defmodule("term_basic", TERM_BASIC);

  defmodule("arithmetic", {
    "is/2": function(w, a, e) { return unify_or_undo(w, a, new t_num(evaluate(e))); },
    "</2": function(w, a, b) { return num_cmp(a, b) < 0; },
    ">/2": function(w, a, b) { return num_cmp(a, b) > 0; },
    "=</2": function(w, a, b) { return num_cmp(a, b) <= 0; },
    ">=/2": function(w, a, b) { return num_cmp(a, b) >= 0; },
    "=:=/2": function(w, a, b) { return num_cmp(a, b) === 0; },
    "=\\=/2": function(w, a, b) { return num_cmp(a, b) !== 0; },
    "between/3": function(w, lo, hi, x) {
      var l = evaluate(lo), h = evaluate(hi);
      var xv = x.deref();
      if (xv instanceof t_num) return l <= xv.v && xv.v <= h;
      if (l > h) return false;
      if (l < h) {
        var next = l + 1;
        w.push_retry(function(w, cp) {
          var v = next++;
          if (next > h) w.choice = cp.prev;
          return unify(w, x, new t_num(v)) ? w.cont : FAIL;
        });
      }
      return unify(w, x, new t_num(l));
    },
    "succ/2": function(w, a, b) {
      var x = int_of(a);
      if (x !== null) {
        if (x < 0) err("type error: not_less_than_zero");
        return unify_or_undo(w, b, new t_num(x + 1));
      }
      var y = int_of(b);
      if (y === null) err("instantiation error in succ/2");
      return y > 0 && unify_or_undo(w, a, new t_num(y - 1));
    },
    "plus/3": function(w, a, b, c) {
      var x = a.deref(), y = b.deref(), z = c.deref();
      if (x instanceof t_num && y instanceof t_num) return unify_or_undo(w, z, new t_num(x.v + y.v));
      if (x instanceof t_num && z instanceof t_num) return unify_or_undo(w, y, new t_num(z.v - x.v));
      if (y instanceof t_num && z instanceof t_num) return unify_or_undo(w, x, new t_num(z.v - y.v));
      err("instantiation error in plus/3");
    }
  });

  defmodule("io", {
    "write/1": function(w, t) { w.out(format(t, false)); return true; },
    "print/1": function(w, t) { w.out(format(t, false)); return true; },
    "writeq/1": function(w, t) { w.out(format(t, true)); return true; },
    "nl/0": function(w) { w.out("\n"); return true; }
  });

  function attrs_of(v) { return v instanceof t_attrvar ? v.attrs : null; }
  defmodule("attr", {
    "put_attr/3": function(w, v, m, val) {
      v = v.deref();
      m = m.deref();
      if (!is_var(v)) err("type error: variable expected in put_attr/3");
      if (!is_atom(m)) err("type error: module name expected in put_attr/3");
      var attrs = {};
      var old = attrs_of(v);
      if (old !== null) for (var k in old) attrs[k] = old[k];
      attrs[m.name] = val;
      if (old === null) {
        w.bind(v, new t_attrvar(w, attrs));
      } else {
        w.undo.push({ unbind: function() { v.attrs = old; } });
        v.attrs = attrs;
      }
      return true;
    },
    "get_attr/3": function(w, v, m, val) {
      v = v.deref();
      m = m.deref();
      if (!is_var(v)) err("type error: variable expected in get_attr/3");
      var attrs = attrs_of(v);
      if (attrs === null || !has(attrs, m.name)) return false;
      return unify_or_undo(w, val, attrs[m.name]);
    },
    "del_attr/2": function(w, v, m) {
      v = v.deref();
      m = m.deref();
      var old = attrs_of(v);
      if (old === null || !has(old, m.name)) return true;
      var attrs = {};
      for (var k in old) if (k !== m.name) attrs[k] = old[k];
      w.undo.push({ unbind: function() { v.attrs = old; } });
      v.attrs = attrs;
      return true;
    }
  });

  // Embedding.

  // Answer iterator for `goal` solved in module `mod`.
  function Solver(w, goal, mod) {
    this.w = w;
    this.goal = goal;
    this.mod = mod;
    this.started = false;
    this.done = false;
    this.halted = false;
    this.base = null;
    this.mark = 0;
    this.time = 0;
  }
  Solver.prototype.next = function() {
    if (this.done) return false;
    var w = this.w, k;
    if (!this.started) {
      this.started = true;
      this.base = w.choice;
      this.mark = w.undo.length;
      this.time = w.time;
      w.frame = null;
      k = meta(w, this.goal, this.mod, w.choice, DONE);
    } else {
      k = FAIL;
    }
    var r = run(w, k, this.base);
    if (r === DONE) return true;
    if (r === HALT) this.halted = true;
    else {
      w.untrail(this.mark);
      w.time = this.time;
    }
    this.done = true;
    return false;
  };

  function unbox(t, kind, what) {
    t = t.deref();
    if (!(t instanceof kind)) err("type error: " + what + " expected, found " + format(t, true));
    return t.unbox();
  }

  $r.def("$rt", function(m) {
    var e = m.exports;
    e.fail = FAIL;
    e.done = DONE;
    e.call = function(w) { return w.goal.execute(w); };
    e.unify = unify;
    e.key = key;
    e.eval = evaluate;
    e.level = function(b) { return new t_level(b); };
    e.cut_to = function(w, t) {
      t = t.deref();
      if (!(t instanceof t_level)) err("bad cut level");
      w.cut(t.cp);
    };
    e.unbox_num = function(t) { return unbox(t, t_num, "number"); };
    e.unbox_str = function(t) { return unbox(t, t_string, "string"); };
    e.unbox_atom = function(t) {
      t = t.deref();
      if (!is_atom(t)) err("type error: atom expected, found " + format(t, true));
      return t.name;
    };
    e.unbox_obj = function(t, ctor) {
      t = t.deref();
      if (!(t instanceof ctor)) err("type error: foreign object expected, found " + format(t, true));
      return t.a0;
    };
    e.atom = atom;
    e.mk = mk;
    e.num = function(x) { return new t_num(x); };
    e.str = function(s) { return new t_string(s); };
    e.list = mklist;
    e.new_var = function(w) { return new t_var(w); };
    e.Worker = Worker;
    e.Solver = Solver;
    e.solve = function(w, goal, mod) { return new Solver(w, goal, mod || "user"); };
    e.format = format;
    e.answer = answer;
    e.compare = compare;
    e.PrologError = PrologError;
  });
  $r.query("$rt").prepare();
  for (var b = 0; b < BUILTIN_MODULES.length; b++) $r.query(BUILTIN_MODULES[b]).prepare();
})();

if (typeof module !== "undefined" && module.exports) {
  module.exports = { $r: $r, $s: $s, $extends: $extends };
}
