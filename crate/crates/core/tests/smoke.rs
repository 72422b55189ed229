use wkernel::check::{check_declarations, Context};
use wkernel::parse::parse_file;
use wkernel::syntax::Flags;

#[test]
fn smoke() {
    let src = r#"
def id : (A : U0) -> A -> A := fun A x => x
def comp : (A B C : U0) -> (B -> C) -> (A -> B) -> A -> C := fun A B C g f x => g (f x)
def Nat : U0 := W (Sum N1 N1) (fun b => case (fun _ => U0) (fun _ => N0) (fun _ => N1) b)
def zero : Nat := sup (inl star) (fun z => absurd (fun _ => Nat) z)
def succ : Nat -> Nat := fun n => sup (inr star) (fun _ => n)
def add : Nat -> Nat -> Nat := fun m => elimW (fun _ => Nat -> Nat)
   (fun a f h => case (fun a => ((case (fun _ => U0) (fun _ => N0) (fun _ => N1) a) -> Nat -> Nat) -> Nat -> Nat) (fun _ _ n => n) (fun _ h n => succ (h star n)) a h) m
def two : Nat := succ (succ zero)
def t : Id Nat (add two two) (succ (succ two)) := refl (add two two)
def sym : (A : U0) -> (x y : A) -> Id A x y -> Id A y x := fun A x y p => J (fun a b _ => Id A b a) (fun a => refl a) x y p
"#;
    let decls = parse_file(src).unwrap();
    match check_declarations(&Context::new(), &decls, Flags::NONE) {
        Ok(_) => {}
        Err(e) => panic!("{e}"),
    }
}
