//! The primitive W, DW, WP and Cover formers with their rules stated as
//! declarations over parameters `P_*`, and three parameter instances each.

pub struct Former {
    pub name: &'static str,
    /// Per instance: suffix and parameter definitions over names `P_*`.
    pub instances: [(&'static str, &'static str); 3],
    /// Rule declarations over the `P_*` parameters.
    pub rules: &'static str,
    /// An elimination whose motive has the wrong number of binders.
    pub bad_motive: &'static str,
}

pub const W_RULES: &str = r#"
def F_W : U0 := W P_A P_B
def I_W : (a : P_A) -> (P_B a -> W P_A P_B) -> W P_A P_B := fun a f => sup a f
def E_W : (M : W P_A P_B -> U0)
    -> ((a : P_A) -> (f : P_B a -> W P_A P_B) -> ((b : P_B a) -> M (f b)) -> M (sup a f))
    -> (w : W P_A P_B) -> M w
  := fun M d w => elimW (fun x => M x) d w
def C_W : (M : W P_A P_B -> U0)
    -> (d : (a : P_A) -> (f : P_B a -> W P_A P_B) -> ((b : P_B a) -> M (f b)) -> M (sup a f))
    -> (a : P_A) -> (f : P_B a -> W P_A P_B)
    -> Id (M (sup a f)) (elimW (fun x => M x) d (sup a f)) (d a f (fun b => elimW (fun x => M x) d (f b)))
  := fun M d a f => refl (d a f (fun b => elimW (fun x => M x) d (f b)))
"#;

pub const DW_RULES: &str = r#"
def F_DW : P_I -> U0 := fun i => DW P_I P_N P_Br P_ar i
def I_DW : (i : P_I) -> (n : P_N i) -> ((b : P_Br i n) -> DW P_I P_N P_Br P_ar (P_ar i n b)) -> DW P_I P_N P_Br P_ar i
  := fun i n f => dsup i n f
def E_DW : (M : (i : P_I) -> DW P_I P_N P_Br P_ar i -> U0)
    -> ((i : P_I) -> (n : P_N i) -> (f : (b : P_Br i n) -> DW P_I P_N P_Br P_ar (P_ar i n b))
        -> ((b : P_Br i n) -> M (P_ar i n b) (f b)) -> M i (dsup i n f))
    -> (i : P_I) -> (w : DW P_I P_N P_Br P_ar i) -> M i w
  := fun M d i w => elimDW (fun i w => M i w) d i w
def C_DW : (M : (i : P_I) -> DW P_I P_N P_Br P_ar i -> U0)
    -> (d : (i : P_I) -> (n : P_N i) -> (f : (b : P_Br i n) -> DW P_I P_N P_Br P_ar (P_ar i n b))
        -> ((b : P_Br i n) -> M (P_ar i n b) (f b)) -> M i (dsup i n f))
    -> (i : P_I) -> (n : P_N i) -> (f : (b : P_Br i n) -> DW P_I P_N P_Br P_ar (P_ar i n b))
    -> Id (M i (dsup i n f)) (elimDW (fun i w => M i w) d i (dsup i n f))
          (d i n f (fun b => elimDW (fun i w => M i w) d (P_ar i n b) (f b)))
  := fun M d i n f => refl (d i n f (fun b => elimDW (fun i w => M i w) d (P_ar i n b) (f b)))
"#;

pub const WP_RULES: &str = r#"
def F_WP : P_I -> U0 := fun i => WP P_I P_N P_R i
def I_WP : (i : P_I) -> (n : P_N i) -> ((j : P_I) -> P_R i n j -> WP P_I P_N P_R j) -> WP P_I P_N P_R i
  := fun i n f => ind i n f
def E_WP : (M : (i : P_I) -> WP P_I P_N P_R i -> U0)
    -> ((i : P_I) -> (n : P_N i) -> (f : (j : P_I) -> P_R i n j -> WP P_I P_N P_R j)
        -> ((j : P_I) -> (r : P_R i n j) -> M j (f j r)) -> M i (ind i n f))
    -> (i : P_I) -> (w : WP P_I P_N P_R i) -> M i w
  := fun M c i w => elimWP (fun i w => M i w) c i w
def C_WP : (M : (i : P_I) -> WP P_I P_N P_R i -> U0)
    -> (c : (i : P_I) -> (n : P_N i) -> (f : (j : P_I) -> P_R i n j -> WP P_I P_N P_R j)
        -> ((j : P_I) -> (r : P_R i n j) -> M j (f j r)) -> M i (ind i n f))
    -> (i : P_I) -> (n : P_N i) -> (f : (j : P_I) -> P_R i n j -> WP P_I P_N P_R j)
    -> Id (M i (ind i n f)) (elimWP (fun i w => M i w) c i (ind i n f))
          (c i n f (fun j r => elimWP (fun i w => M i w) c j (f j r)))
  := fun M c i n f => refl (c i n f (fun j r => elimWP (fun i w => M i w) c j (f j r)))
"#;

pub const COVER_RULES: &str = r#"
def F_Cov : P_A -> U0 := fun a => Cover P_A P_Ax P_C P_V a
def I_rf : (a : P_A) -> P_V a -> Cover P_A P_Ax P_C P_V a := fun a r => rf a r
def I_tr : (a : P_A) -> (i : P_Ax a) -> ((b : P_A) -> P_C a i b -> Cover P_A P_Ax P_C P_V b) -> Cover P_A P_Ax P_C P_V a
  := fun a i r => tr a i r
def E_Cov : (M : (a : P_A) -> Cover P_A P_Ax P_C P_V a -> U0)
    -> ((a : P_A) -> (r : P_V a) -> M a (rf a r))
    -> ((a : P_A) -> (i : P_Ax a) -> (r : (b : P_A) -> P_C a i b -> Cover P_A P_Ax P_C P_V b)
        -> ((b : P_A) -> (s : P_C a i b) -> M b (r b s)) -> M a (tr a i r))
    -> (a : P_A) -> (p : Cover P_A P_Ax P_C P_V a) -> M a p
  := fun M q1 q2 a p => elimCover (fun a p => M a p) q1 q2 a p
def C_rf : (M : (a : P_A) -> Cover P_A P_Ax P_C P_V a -> U0)
    -> (q1 : (a : P_A) -> (r : P_V a) -> M a (rf a r))
    -> (q2 : (a : P_A) -> (i : P_Ax a) -> (r : (b : P_A) -> P_C a i b -> Cover P_A P_Ax P_C P_V b)
        -> ((b : P_A) -> (s : P_C a i b) -> M b (r b s)) -> M a (tr a i r))
    -> (a : P_A) -> (r : P_V a)
    -> Id (M a (I_rf a r)) (E_Cov M q1 q2 a (I_rf a r)) (q1 a r)
  := fun M q1 q2 a r => refl (q1 a r)
def C_tr : (M : (a : P_A) -> Cover P_A P_Ax P_C P_V a -> U0)
    -> (q1 : (a : P_A) -> (r : P_V a) -> M a (rf a r))
    -> (q2 : (a : P_A) -> (i : P_Ax a) -> (r : (b : P_A) -> P_C a i b -> Cover P_A P_Ax P_C P_V b)
        -> ((b : P_A) -> (s : P_C a i b) -> M b (r b s)) -> M a (tr a i r))
    -> (a : P_A) -> (i : P_Ax a) -> (r : (b : P_A) -> P_C a i b -> Cover P_A P_Ax P_C P_V b)
    -> Id (M a (tr a i r)) (elimCover (fun a p => M a p) q1 q2 a (tr a i r))
          (q2 a i r (fun b s => elimCover (fun a p => M a p) q1 q2 b (r b s)))
  := fun M q1 q2 a i r => refl (q2 a i r (fun b s => elimCover (fun a p => M a p) q1 q2 b (r b s)))
"#;

pub const TWO_CASE: &str = "case (fun _ => U0) (fun _ => N0) (fun _ => N1)";

pub fn formers() -> Vec<Former> {
    vec![
        Former {
            name: "W",
            instances: [
                ("empty", "def P_A : U0 := N1\ndef P_B : P_A -> U0 := fun _ => N0\n"),
                ("unit", "def P_A : U0 := N1\ndef P_B : P_A -> U0 := fun _ => N1\n"),
                (
                    "two",
                    "def P_A : U0 := Sum N1 N1\n\
                     def P_B : P_A -> U0 := fun a => case (fun _ => U0) (fun _ => N0) (fun _ => N1) a\n",
                ),
            ],
            rules: W_RULES,
            bad_motive: "def bad : (w : W P_A P_B) -> N1 := fun w => elimW (fun x y => N1) (fun a f h => star) w",
        },
        Former {
            name: "DW",
            instances: [
                (
                    "empty",
                    "def P_I : U0 := N1\ndef P_N : P_I -> U0 := fun _ => N1\n\
                     def P_Br : (i : P_I) -> P_N i -> U0 := fun _ _ => N0\n\
                     def P_ar : (i : P_I) -> (n : P_N i) -> P_Br i n -> P_I := fun _ _ b => absurd (fun _ => N1) b\n",
                ),
                (
                    "unit",
                    "def P_I : U0 := N1\ndef P_N : P_I -> U0 := fun _ => N1\n\
                     def P_Br : (i : P_I) -> P_N i -> U0 := fun _ _ => N1\n\
                     def P_ar : (i : P_I) -> (n : P_N i) -> P_Br i n -> P_I := fun _ _ _ => star\n",
                ),
                (
                    "two",
                    "def P_I : U0 := Sum N1 N1\ndef P_N : P_I -> U0 := fun _ => Sum N1 N1\n\
                     def P_Br : (i : P_I) -> P_N i -> U0 := fun _ n => case (fun _ => U0) (fun _ => N0) (fun _ => N1) n\n\
                     def P_ar : (i : P_I) -> (n : P_N i) -> P_Br i n -> P_I := fun i _ _ => case (fun _ => Sum N1 N1) (fun _ => inr star) (fun _ => inl star) i\n",
                ),
            ],
            rules: DW_RULES,
            bad_motive: "def bad : (i : P_I) -> (w : DW P_I P_N P_Br P_ar i) -> N1 := fun i w => elimDW (fun i => N1) (fun i n f h => star) i w",
        },
        Former {
            name: "WP",
            instances: [
                (
                    "empty",
                    "def P_I : U0 := N1\ndef P_N : P_I -> U0 := fun _ => N1\n\
                     def P_R : (i : P_I) -> P_N i -> P_I -> U0 := fun _ _ _ => N0\n",
                ),
                (
                    "unit",
                    "def P_I : U0 := N1\ndef P_N : P_I -> U0 := fun _ => N1\n\
                     def P_R : (i : P_I) -> P_N i -> P_I -> U0 := fun _ _ _ => N1\n",
                ),
                (
                    "two",
                    "def P_I : U0 := Sum N1 N1\ndef P_N : P_I -> U0 := fun _ => Sum N1 N1\n\
                     def P_R : (i : P_I) -> P_N i -> P_I -> U0 := fun _ n _ => case (fun _ => U0) (fun _ => N0) (fun _ => N1) n\n",
                ),
            ],
            rules: WP_RULES,
            bad_motive: "def bad : (i : P_I) -> (w : WP P_I P_N P_R i) -> N1 := fun i w => elimWP (fun i => N1) (fun i n f h => star) i w",
        },
        Former {
            name: "Cover",
            instances: [
                (
                    "empty",
                    "def P_A : U0 := N1\ndef P_Ax : P_A -> U0 := fun _ => N0\n\
                     def P_C : (a : P_A) -> P_Ax a -> P_A -> U0 := fun _ i _ => absurd (fun _ => U0) i\n\
                     def P_V : P_A -> U0 := fun _ => N0\n",
                ),
                (
                    "unit",
                    "def P_A : U0 := N1\ndef P_Ax : P_A -> U0 := fun _ => N1\n\
                     def P_C : (a : P_A) -> P_Ax a -> P_A -> U0 := fun _ _ _ => N1\n\
                     def P_V : P_A -> U0 := fun _ => N1\n",
                ),
                (
                    "two",
                    "def P_A : U0 := Sum N1 N1\ndef P_Ax : P_A -> U0 := fun _ => N1\n\
                     def P_C : (a : P_A) -> P_Ax a -> P_A -> U0 := fun a _ b => case (fun _ => U0) (fun _ => case (fun _ => U0) (fun _ => N0) (fun _ => N1) b) (fun _ => N0) a\n\
                     def P_V : P_A -> U0 := fun a => case (fun _ => U0) (fun _ => N0) (fun _ => N1) a\n",
                ),
            ],
            rules: COVER_RULES,
            bad_motive: "def bad : (a : P_A) -> (p : Cover P_A P_Ax P_C P_V a) -> N1 := fun a p => elimCover (fun a => N1) (fun a r => star) (fun a i r h => star) a p",
        },
    ]
}
